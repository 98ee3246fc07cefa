//! Dense state-vector register.
//!
//! Qubits are numbered from 1. Qubit 1 is the leftmost bit of a basis label
//! and the most significant bit of its index, so `|q1 q2 ... qN>` sits at
//! index `sum_k q_k 2^(N-k)`.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{cone, creal, czero, Scalar};

/// Default upper bound on register size.
pub const DEFAULT_MAX_QUBITS: usize = 20;

static MAX_QUBITS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_QUBITS);

/// Current register-size cap.
pub fn max_qubits() -> usize {
    MAX_QUBITS.load(Ordering::Relaxed)
}

/// Overrides the register-size cap for the whole process.
pub fn set_max_qubits(cap: usize) {
    MAX_QUBITS.store(cap, Ordering::Relaxed);
}

fn check_cap(n: usize) -> Result<()> {
    let cap = max_qubits();
    if n > cap {
        return Err(Error::RegisterTooLarge { requested: n, cap });
    }
    Ok(())
}

/// 2x2 single-qubit gate, row-major.
pub type Gate2<T> = [[Complex<T>; 2]; 2];

/// Index of a computational basis label given as a `0`/`1` string.
pub fn basis_index(bits: &str) -> Result<usize> {
    if bits.is_empty() {
        return Err(Error::InvalidRegister("empty bit-string".into()));
    }
    if bits.len() > usize::BITS as usize - 1 {
        return Err(Error::InvalidRegister(format!(
            "bit-string of length {} does not fit an index",
            bits.len()
        )));
    }
    bits.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        other => Err(Error::InvalidRegister(format!(
            "bit-string contains '{other}'"
        ))),
    })
}

/// Basis label of `index` in an `n`-qubit register.
pub fn basis_label(index: usize, n: usize) -> String {
    (0..n)
        .map(|k| {
            if (index >> (n - 1 - k)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

#[inline]
fn bit_mask(n: usize, qubit: usize) -> usize {
    1 << (n - qubit)
}

/// Normalized (or explicitly unnormalized) amplitude vector over `2^N` basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    num_qubits: usize,
    amps: Vec<Complex<T>>,
    normalized: bool,
}

impl<T: Scalar> StateVector<T> {
    /// `|0...0>` on `n` qubits.
    pub fn zero_state(n: usize) -> Result<Self> {
        Self::basis_state(n, 0)
    }

    pub fn basis_state(n: usize, index: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRegister(
                "register needs at least one qubit".into(),
            ));
        }
        check_cap(n)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::Index(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amps = vec![czero(); dim];
        amps[index] = cone();
        Ok(Self {
            num_qubits: n,
            amps,
            normalized: true,
        })
    }

    /// Basis state from a label such as `"010"`.
    pub fn from_label(bits: &str) -> Result<Self> {
        Self::basis_state(bits.len(), basis_index(bits)?)
    }

    /// Validates length `2^N` and unit norm.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        let state = Self::from_amplitudes_unnormalized(amps)?;
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - T::one()).abs() > T::tolerances().exact {
            return Err(Error::NotNormalized {
                norm_sqr: norm_sqr.to_f64_lossy(),
            });
        }
        Ok(Self {
            normalized: true,
            ..state
        })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized_from(amps: Vec<Complex<T>>) -> Result<Self> {
        let state = Self::from_amplitudes_unnormalized(amps)?;
        state.renormalized()
    }

    /// Keeps the amplitudes as given and marks the state as a transient branch.
    pub fn from_amplitudes_unnormalized(amps: Vec<Complex<T>>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidRegister(format!(
                "amplitude vector length {dim} is not 2^N with N >= 1"
            )));
        }
        let n = dim.trailing_zeros() as usize;
        check_cap(n)?;
        Ok(Self {
            num_qubits: n,
            amps,
            normalized: false,
        })
    }

    /// One-qubit state `a|0> + b|1>`.
    pub fn qubit(a: Complex<T>, b: Complex<T>) -> Result<Self> {
        Self::from_amplitudes(vec![a, b])
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amps[index]
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm_sqr(&self) -> T {
        self.amps
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn renormalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm <= T::zero() || !norm.is_finite() {
            return Err(Error::NotNormalized {
                norm_sqr: self.norm_sqr().to_f64_lossy(),
            });
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            amps: self.amps.iter().map(|&z| z / creal(norm)).collect(),
            normalized: true,
        })
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q == 0 || q > self.num_qubits {
            return Err(Error::Index(format!(
                "qubit {q} outside register 1..={}",
                self.num_qubits
            )));
        }
        Ok(())
    }

    fn check_distinct(&self, qubits: &[usize]) -> Result<()> {
        for (i, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..i].contains(&q) {
                return Err(Error::Index(format!("qubit {q} listed twice")));
            }
        }
        Ok(())
    }

    /// Applies a 2x2 unitary to one qubit.
    pub fn apply_1q_gate(&self, gate: &Gate2<T>, target: usize) -> Result<Self> {
        let defect = gate_unitarity_defect(gate);
        if defect > T::tolerances().exact {
            return Err(Error::NotUnitary {
                defect: defect.to_f64_lossy(),
            });
        }
        self.apply_1q_unchecked(gate, target)
    }

    /// Same as [`apply_1q_gate`](Self::apply_1q_gate) without the unitarity
    /// check; used for known-diagonal phase corrections built from ratios.
    pub(crate) fn apply_1q_unchecked(&self, gate: &Gate2<T>, target: usize) -> Result<Self> {
        self.check_qubit(target)?;
        let mask = bit_mask(self.num_qubits, target);
        let mut out = self.amps.clone();
        for i0 in (0..self.dim()).filter(|i| i & mask == 0) {
            let i1 = i0 | mask;
            let (a0, a1) = (self.amps[i0], self.amps[i1]);
            out[i0] = gate[0][0] * a0 + gate[0][1] * a1;
            out[i1] = gate[1][0] * a0 + gate[1][1] * a1;
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            amps: out,
            normalized: self.normalized,
        })
    }

    pub fn apply_cnot(&self, control: usize, target: usize) -> Result<Self> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::Index(format!(
                "control and target are both qubit {control}"
            )));
        }
        let cmask = bit_mask(self.num_qubits, control);
        let tmask = bit_mask(self.num_qubits, target);
        let mut out = self.amps.clone();
        for i in (0..self.dim()).filter(|i| i & cmask != 0 && i & tmask == 0) {
            out.swap(i, i | tmask);
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            amps: out,
            normalized: self.normalized,
        })
    }

    /// Applies a full-register operator given as a dense matrix.
    pub fn apply_matrix(&self, op: &CMatrix<T>) -> Result<Self> {
        if op.rows() != self.dim() || op.cols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: op.rows(),
            });
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            amps: op.mul_vec(&self.amps)?,
            normalized: self.normalized,
        })
    }

    /// `self ⊗ other`; `self` occupies the leading qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.num_qubits + other.num_qubits;
        check_cap(n)?;
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(Self {
            num_qubits: n,
            amps,
            normalized: self.normalized && other.normalized,
        })
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(czero(), |acc, (a, b)| acc + a.conj() * b))
    }

    /// `|<a|b>|^2`.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        let ov = self.inner(other)?;
        Ok(ov.norm_sqr().min(T::one()))
    }

    /// `|psi><psi|` as a dense matrix.
    pub fn outer_product(&self) -> CMatrix<T> {
        CMatrix::outer(&self.amps, &self.amps)
    }

    /// Splits every basis index into (bits of `qubits` in the given order,
    /// bits of the remaining qubits in ascending order).
    fn split_index(&self, qubits: &[usize], index: usize) -> (usize, usize) {
        let n = self.num_qubits;
        let mut sel = 0usize;
        for &q in qubits {
            sel = (sel << 1) | ((index >> (n - q)) & 1);
        }
        let mut rest = 0usize;
        for q in (1..=n).filter(|q| !qubits.contains(q)) {
            rest = (rest << 1) | ((index >> (n - q)) & 1);
        }
        (sel, rest)
    }

    /// Projective computational-basis measurement of `qubits`.
    ///
    /// One branch per outcome with probability above the pruning threshold,
    /// in ascending outcome order. Post-states live on the unmeasured qubits;
    /// measuring every qubit yields [`BranchState::Classical`].
    pub fn measure_subset(&self, qubits: &[usize]) -> Result<Vec<MeasurementBranch<T>>> {
        self.check_distinct(qubits)?;
        let k = qubits.len();
        let rest_qubits = self.num_qubits - k;
        let mut buckets: Vec<Vec<Complex<T>>> = vec![vec![czero(); 1 << rest_qubits]; 1 << k];
        for (i, &a) in self.amps.iter().enumerate() {
            let (sel, rest) = self.split_index(qubits, i);
            buckets[sel][rest] = a;
        }
        let total = self.norm_sqr();
        let prune = T::tolerances().prune;
        let mut branches = Vec::new();
        for (outcome, amps) in buckets.into_iter().enumerate() {
            let weight = amps.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
            let probability = weight / total;
            if probability <= prune {
                continue;
            }
            let post_state = if rest_qubits == 0 {
                BranchState::Classical
            } else {
                BranchState::Quantum(Self::from_amplitudes_unnormalized(amps)?.renormalized()?)
            };
            branches.push(MeasurementBranch {
                outcome: basis_label(outcome, k),
                probability,
                post_state,
            });
        }
        Ok(branches)
    }

    /// Projects `qubits` onto the basis label `bits` (`<bits|` acting on those
    /// qubits) and renormalizes what remains.
    pub fn project_bra(&self, qubits: &[usize], bits: &str) -> Result<Projection<T>> {
        if qubits.len() != bits.len() {
            return Err(Error::InvalidArgument(format!(
                "{} qubits but {} bits",
                qubits.len(),
                bits.len()
            )));
        }
        if qubits.is_empty() {
            return Ok(Projection {
                probability: T::one(),
                residual: self.norm_sqr(),
                post_state: Some(self.clone()),
            });
        }
        self.check_distinct(qubits)?;
        let target = basis_index(bits)?;
        let rest_qubits = self.num_qubits - qubits.len();
        let mut amps = vec![czero(); 1 << rest_qubits];
        for (i, &a) in self.amps.iter().enumerate() {
            let (sel, rest) = self.split_index(qubits, i);
            if sel == target {
                amps[rest] = a;
            }
        }
        let residual = amps.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        let probability = residual / self.norm_sqr();
        let post_state = if probability <= T::tolerances().prune || rest_qubits == 0 {
            None
        } else {
            Some(Self::from_amplitudes_unnormalized(amps)?.renormalized()?)
        };
        Ok(Projection {
            probability,
            residual,
            post_state,
        })
    }

    /// Projection without renormalization: the amplitudes that survive `<bits|`
    /// on `qubits`, as an unnormalized state on the remaining qubits.
    pub fn project_unnormalized(&self, qubits: &[usize], bits: &str) -> Result<Self> {
        if qubits.len() != bits.len() {
            return Err(Error::InvalidArgument(format!(
                "{} qubits but {} bits",
                qubits.len(),
                bits.len()
            )));
        }
        if qubits.is_empty() {
            return Ok(Self {
                normalized: false,
                ..self.clone()
            });
        }
        self.check_distinct(qubits)?;
        if qubits.len() == self.num_qubits {
            return Err(Error::InvalidArgument(
                "projection would leave no qubits".into(),
            ));
        }
        let target = basis_index(bits)?;
        let rest_qubits = self.num_qubits - qubits.len();
        let mut amps = vec![czero(); 1 << rest_qubits];
        for (i, &a) in self.amps.iter().enumerate() {
            let (sel, rest) = self.split_index(qubits, i);
            if sel == target {
                amps[rest] = a;
            }
        }
        Self::from_amplitudes_unnormalized(amps)
    }
}

/// Result of [`StateVector::project_bra`].
#[derive(Debug, Clone, PartialEq)]
pub struct Projection<T> {
    /// Conditional probability of the projected outcome.
    pub probability: T,
    /// Squared norm of the projected component before renormalization.
    pub residual: T,
    /// Renormalized state on the unprojected qubits; `None` for a null
    /// projection or when no qubits remain.
    pub post_state: Option<StateVector<T>>,
}

/// What is left after a measurement outcome.
#[derive(Debug, Clone, PartialEq)]
pub enum BranchState<T> {
    Quantum(StateVector<T>),
    /// Every qubit was measured.
    Classical,
}

impl<T> BranchState<T> {
    pub fn as_state(&self) -> Option<&StateVector<T>> {
        match self {
            BranchState::Quantum(s) => Some(s),
            BranchState::Classical => None,
        }
    }
}

/// One outcome of a projective measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBranch<T> {
    /// Bit-string over the measured qubits, in the order they were listed.
    pub outcome: String,
    pub probability: T,
    pub post_state: BranchState<T>,
}

pub fn gate_unitarity_defect<T: Scalar>(g: &Gate2<T>) -> T {
    let mut worst = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = g
                .iter()
                .fold(czero::<T>(), |acc, row| acc + row[i].conj() * row[j]);
            if i == j {
                acc = acc - cone();
            }
            worst = worst.max(acc.norm());
        }
    }
    worst
}

/// Standard single-qubit gates.
pub mod gates {
    use super::Gate2;
    use crate::scalar::{c, cone, czero, Scalar};
    use num_complex::Complex;

    pub fn identity<T: Scalar>() -> Gate2<T> {
        [[cone(), czero()], [czero(), cone()]]
    }

    pub fn hadamard<T: Scalar>() -> Gate2<T> {
        let h = T::FRAC_1_SQRT_2();
        let p = Complex::new(h, T::zero());
        [[p, p], [p, -p]]
    }

    pub fn pauli_x<T: Scalar>() -> Gate2<T> {
        [[czero(), cone()], [cone(), czero()]]
    }

    pub fn pauli_y<T: Scalar>() -> Gate2<T> {
        [[czero(), c(0.0, -1.0)], [c(0.0, 1.0), czero()]]
    }

    pub fn pauli_z<T: Scalar>() -> Gate2<T> {
        [[cone(), czero()], [czero(), -cone::<T>()]]
    }

    /// `diag(1, phase)`.
    pub fn phase<T: Scalar>(phase: Complex<T>) -> Gate2<T> {
        [[cone(), czero()], [czero(), phase]]
    }
}
