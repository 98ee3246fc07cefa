//! Coefficient description of a general N-qubit W state.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{creal, czero, Scalar};
use crate::state::StateVector;

/// Coefficients `c_1..c_N` of `|W> = sum_i c_i |0..1_i..0>`, where the single
/// excitation of the i-th term sits on qubit i.
///
/// Uniform coefficients are valid.
#[derive(Debug, Clone, PartialEq)]
pub struct WSpec<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> WSpec<T> {
    /// Requires `N >= 2` and `sum |c_i|^2 = 1` to working precision.
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        Self::check_len(coeffs.len())?;
        let norm_sqr = norm_sqr(&coeffs);
        if (norm_sqr - T::one()).abs() > T::tolerances().exact {
            return Err(Error::NotNormalized {
                norm_sqr: norm_sqr.to_f64_lossy(),
            });
        }
        Ok(Self { coeffs })
    }

    /// Accepts coefficients whose squared norm is within `tolerance` of one
    /// and rescales them to unit norm.
    pub fn renormalized(coeffs: Vec<Complex<T>>, tolerance: T) -> Result<Self> {
        Self::check_len(coeffs.len())?;
        let norm_sqr = norm_sqr(&coeffs);
        let within = (norm_sqr - T::one()).abs() <= tolerance;
        if !within {
            return Err(Error::NotNormalized {
                norm_sqr: norm_sqr.to_f64_lossy(),
            });
        }
        let norm = creal(norm_sqr.sqrt());
        Ok(Self {
            coeffs: coeffs.into_iter().map(|z| z / norm).collect(),
        })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| creal(T::lit(x))).collect())
    }

    /// `c_i = 1/sqrt(N)` for every qubit.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::check_len(n)?;
        let a = T::one() / T::from_usize(n).expect("register size fits scalar").sqrt();
        Ok(Self {
            coeffs: vec![creal(a); n],
        })
    }

    fn check_len(n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::InvalidRegister(format!(
                "a W state needs at least 2 qubits, got {n}"
            )));
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Coefficient of qubit `i` (1-based).
    pub fn coeff(&self, i: usize) -> Complex<T> {
        self.coeffs[i - 1]
    }

    pub fn first(&self) -> Complex<T> {
        self.coeffs[0]
    }

    pub fn last(&self) -> Complex<T> {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn check_qubit(&self, q: usize) -> Result<()> {
        if q == 0 || q > self.num_qubits() {
            return Err(Error::Index(format!(
                "qubit {q} outside W register 1..={}",
                self.num_qubits()
            )));
        }
        Ok(())
    }

    /// The full `2^N` amplitude vector.
    pub fn to_state(&self) -> Result<StateVector<T>> {
        let n = self.num_qubits();
        let mut amps = vec![czero(); 1usize.checked_shl(n as u32).unwrap_or(0)];
        if amps.is_empty() {
            return Err(Error::RegisterTooLarge {
                requested: n,
                cap: crate::state::max_qubits(),
            });
        }
        for (i, &c) in self.coeffs.iter().enumerate() {
            amps[1 << (n - 1 - i)] = c;
        }
        StateVector::from_amplitudes(amps)
    }

    /// Reorders qubits: new qubit `k` is old qubit `order[k-1]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let n = self.num_qubits();
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(Error::InvalidArgument(format!(
                "permutation of length {} for {n} qubits",
                order.len()
            )));
        }
        for &q in order {
            self.check_qubit(q)?;
            if seen[q - 1] {
                return Err(Error::InvalidArgument(format!("qubit {q} repeated")));
            }
            seen[q - 1] = true;
        }
        Ok(Self {
            coeffs: order.iter().map(|&q| self.coeff(q)).collect(),
        })
    }

    /// Qubit order reversed. Converts between the excitation-at-qubit-i layout
    /// and the layout where `c_1` multiplies `|0...01>`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self { coeffs }
    }

    /// Multiplies every coefficient by its own phase factor.
    pub fn with_phases(&self, phases: &[T]) -> Result<Self> {
        if phases.len() != self.num_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits(),
                found: phases.len(),
            });
        }
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(phases)
                .map(|(&c, &p)| c * Complex::from_polar(T::one(), p))
                .collect(),
        })
    }
}

fn norm_sqr<T: Scalar>(coeffs: &[Complex<T>]) -> T {
    coeffs.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
}
