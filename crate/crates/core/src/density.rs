//! Density matrices and partial traces.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{czero, Scalar};
use crate::state::StateVector;

/// Hermitian, trace-one operator on a qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    num_qubits: usize,
    entries: CMatrix<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Validates dimension `2^N`, hermiticity and unit trace.
    pub fn new(entries: CMatrix<T>) -> Result<Self> {
        let dim = entries.rows();
        if !entries.is_square() || dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidRegister(format!(
                "density matrix must be 2^N x 2^N, got {}x{}",
                entries.rows(),
                entries.cols()
            )));
        }
        let tol = T::tolerances().exact;
        let herm = entries.hermiticity_defect();
        if herm > tol {
            return Err(Error::InvalidArgument(format!(
                "density matrix is not Hermitian (defect {herm})"
            )));
        }
        let tr = entries.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidArgument(format!(
                "density matrix trace is {tr}, expected 1"
            )));
        }
        Ok(Self {
            num_qubits: dim.trailing_zeros() as usize,
            entries,
        })
    }

    pub(crate) fn new_unchecked(entries: CMatrix<T>) -> Self {
        let num_qubits = entries.rows().trailing_zeros() as usize;
        Self {
            num_qubits,
            entries,
        }
    }

    pub fn from_pure(state: &StateVector<T>) -> Self {
        Self::new_unchecked(state.outer_product())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &CMatrix<T> {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix<T> {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.entries[(i, j)]
    }

    pub fn trace(&self) -> Complex<T> {
        self.entries.trace()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.entries.max_abs_diff(&other.entries)
    }

    /// Reduced state on `keep` (kept qubits appear in the order listed).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let plan = TracePlan::new(self.num_qubits, keep)?;
        let kd = 1usize << keep.len();
        let mut out = CMatrix::zeros(kd, kd);
        for i in 0..kd {
            for j in 0..kd {
                let mut acc = czero::<T>();
                for env in 0..plan.env_dim() {
                    acc = acc + self.entries[(plan.compose(i, env), plan.compose(j, env))];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(Self::new_unchecked(out))
    }
}

/// Something a partial trace can be taken over.
pub enum Traceable<'a, T> {
    Pure(&'a StateVector<T>),
    Mixed(&'a DensityMatrix<T>),
}

impl<'a, T> From<&'a StateVector<T>> for Traceable<'a, T> {
    fn from(s: &'a StateVector<T>) -> Self {
        Traceable::Pure(s)
    }
}

impl<'a, T> From<&'a DensityMatrix<T>> for Traceable<'a, T> {
    fn from(d: &'a DensityMatrix<T>) -> Self {
        Traceable::Mixed(d)
    }
}

/// Reduced density matrix of a pure or mixed register on the qubits in `keep`.
pub fn partial_trace<'a, T: Scalar>(
    input: impl Into<Traceable<'a, T>>,
    keep: &[usize],
) -> Result<DensityMatrix<T>> {
    match input.into() {
        Traceable::Pure(state) => partial_trace_pure(state, keep),
        Traceable::Mixed(rho) => rho.partial_trace(keep),
    }
}

/// `Tr_env |psi><psi|` without forming the full outer product.
pub fn partial_trace_pure<T: Scalar>(
    state: &StateVector<T>,
    keep: &[usize],
) -> Result<DensityMatrix<T>> {
    let plan = TracePlan::new(state.num_qubits(), keep)?;
    let kd = 1usize << keep.len();
    let amps = state.amplitudes();
    let mut out = CMatrix::zeros(kd, kd);
    for env in 0..plan.env_dim() {
        let column: Vec<Complex<T>> = (0..kd).map(|i| amps[plan.compose(i, env)]).collect();
        for i in 0..kd {
            if column[i] == czero() {
                continue;
            }
            for j in 0..kd {
                out[(i, j)] = out[(i, j)] + column[i] * column[j].conj();
            }
        }
    }
    Ok(DensityMatrix::new_unchecked(out))
}

/// Index bookkeeping for a partial trace: maps (kept index, environment index)
/// back to a full-register index.
struct TracePlan {
    n: usize,
    keep: Vec<usize>,
    env: Vec<usize>,
}

impl TracePlan {
    fn new(n: usize, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::InvalidArgument("keep list is empty".into()));
        }
        for (i, &q) in keep.iter().enumerate() {
            if q == 0 || q > n {
                return Err(Error::Index(format!("qubit {q} outside register 1..={n}")));
            }
            if keep[..i].contains(&q) {
                return Err(Error::Index(format!("qubit {q} kept twice")));
            }
        }
        let env = (1..=n).filter(|q| !keep.contains(q)).collect();
        Ok(Self {
            n,
            keep: keep.to_vec(),
            env,
        })
    }

    fn env_dim(&self) -> usize {
        1 << self.env.len()
    }

    fn compose(&self, kept: usize, env: usize) -> usize {
        let mut index = 0usize;
        let k = self.keep.len();
        for (pos, &q) in self.keep.iter().enumerate() {
            let bit = (kept >> (k - 1 - pos)) & 1;
            index |= bit << (self.n - q);
        }
        let e = self.env.len();
        for (pos, &q) in self.env.iter().enumerate() {
            let bit = (env >> (e - 1 - pos)) & 1;
            index |= bit << (self.n - q);
        }
        index
    }
}
