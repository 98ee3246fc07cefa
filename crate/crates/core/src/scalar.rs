//! Real scalar abstraction shared by every numeric routine in the crate.
//!
//! All state vectors, density matrices and protocol reports are generic over
//! a real type `T: Scalar`; amplitudes are `Complex<T>`. `f64` is the working
//! precision, `f32` is supported with correspondingly looser tolerances.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Numerical thresholds for one precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    /// Identities that hold exactly in real arithmetic (norms, traces, unitarity of gates).
    pub exact: T,
    /// Eigenvalue and branch-probability quantities.
    pub branch: T,
    /// Branches whose probability falls below this are dropped.
    pub prune: T,
    /// A heralded branch counts as a faithful transfer above `1 - fidelity`.
    pub fidelity: T,
}

/// Floating-point type usable as the real part of an amplitude.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    fn tolerances() -> Tolerances<Self>;

    /// Converts an `f64` literal. Panics only for values the type cannot represent at all.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal out of range for scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn tolerances() -> Tolerances<f64> {
        Tolerances {
            exact: 1e-12,
            branch: 1e-10,
            prune: 1e-14,
            fidelity: 1e-9,
        }
    }
}

impl Scalar for f32 {
    fn tolerances() -> Tolerances<f32> {
        Tolerances {
            exact: 1e-5,
            branch: 1e-4,
            prune: 1e-7,
            fidelity: 1e-4,
        }
    }
}

pub(crate) fn c<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

pub(crate) fn czero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

pub(crate) fn cone<T: Scalar>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

pub(crate) fn creal<T: Scalar>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

#[cfg(test)]
pub(crate) fn c64(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}
