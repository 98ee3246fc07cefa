//! Eigenvalues of small dense complex matrices.
//!
//! The matrix is reduced to upper Hessenberg form with Householder
//! reflections and then driven to triangular form by single-shift QR sweeps
//! (Wilkinson shift, Givens rotations, deflation on negligible subdiagonals).
//! Only eigenvalues are accumulated; eigenvectors for a given eigenvalue can be
//! recovered by inverse iteration with [`eigenvector`].

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{cone, creal, czero, Scalar};

/// Largest dimension accepted by [`eig_general`].
pub const MAX_EIG_DIM: usize = 16;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;
const EXCEPTIONAL_SHIFT_PERIOD: usize = 10;

/// All eigenvalues of a square complex matrix, with multiplicity, in the order
/// they deflate (no sorting).
pub fn eig_general<T: Scalar>(m: &CMatrix<T>) -> Result<Vec<Complex<T>>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let n = m.rows();
    if n > MAX_EIG_DIM {
        return Err(Error::InvalidArgument(format!(
            "eigen-decomposition limited to dimension {MAX_EIG_DIM}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    let mut h = hessenberg(m);
    let eps = T::epsilon();
    let scale = h.frobenius_norm();
    let mut eigs = vec![czero(); n];
    let mut hi = n - 1;
    let mut sweeps = 0usize;

    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let mut s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if s == T::zero() {
                s = scale;
            }
            if h[(lo, lo - 1)].norm() <= eps * s {
                h[(lo, lo - 1)] = czero();
                break;
            }
            lo -= 1;
        }

        if lo == hi {
            eigs[hi] = h[(hi, hi)];
            hi -= 1;
            sweeps = 0;
            continue;
        }

        sweeps += 1;
        if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(Error::Convergence {
                iterations: sweeps,
                residual: h[(hi, hi - 1)].norm().to_f64_lossy(),
            });
        }

        let shift = if sweeps.is_multiple_of(EXCEPTIONAL_SHIFT_PERIOD) {
            // Break cycles with an ad-hoc shift off the trailing diagonal.
            let sub = h[(hi, hi - 1)].norm();
            h[(hi, hi)] + creal(T::lit(0.75) * sub)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_sweep(&mut h, lo, hi, shift);
    }
    eigs[0] = h[(0, 0)];
    Ok(eigs)
}

/// Unitary similarity transform to upper Hessenberg form.
pub fn hessenberg<T: Scalar>(m: &CMatrix<T>) -> CMatrix<T> {
    let n = m.rows();
    let mut a = m.clone();
    if n < 3 {
        return a;
    }
    for k in 0..n - 2 {
        let x: Vec<Complex<T>> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let tail: T = x[1..].iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        if tail == T::zero() {
            continue;
        }
        let norm_x = (x[0].norm_sqr() + tail).sqrt();
        let phase = if x[0].norm() == T::zero() {
            cone()
        } else {
            x[0] / creal(x[0].norm())
        };
        let alpha = -phase * creal(norm_x);
        let mut v = x;
        v[0] = v[0] - alpha;
        let vnorm = v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
        for z in v.iter_mut() {
            *z = *z / creal(vnorm);
        }
        let two = creal(T::lit(2.0));

        // A <- (I - 2 v v^H) A on rows k+1..n
        for j in 0..n {
            let dot = v
                .iter()
                .enumerate()
                .fold(czero(), |acc, (r, vr)| acc + vr.conj() * a[(k + 1 + r, j)]);
            for (r, vr) in v.iter().enumerate() {
                a[(k + 1 + r, j)] = a[(k + 1 + r, j)] - two * vr * dot;
            }
        }
        // A <- A (I - 2 v v^H) on columns k+1..n
        for i in 0..n {
            let dot = v
                .iter()
                .enumerate()
                .fold(czero(), |acc, (r, vr)| acc + a[(i, k + 1 + r)] * vr);
            for (r, vr) in v.iter().enumerate() {
                a[(i, k + 1 + r)] = a[(i, k + 1 + r)] - two * dot * vr.conj();
            }
        }
        for i in k + 2..n {
            a[(i, k)] = czero();
        }
    }
    a
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson_shift<T: Scalar>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
) -> Complex<T> {
    let half = creal(T::lit(0.5));
    let mean = (a + d) * half;
    let diff = (a - d) * half;
    let disc = (diff * diff + b * c).sqrt();
    let l1 = mean + disc;
    let l2 = mean - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Complex Givens rotation `[[c, s], [-conj(s), c]]` annihilating `b` against `a`.
fn givens<T: Scalar>(a: Complex<T>, b: Complex<T>) -> (T, Complex<T>) {
    let na = a.norm();
    let nb = b.norm();
    if nb == T::zero() {
        return (T::one(), czero());
    }
    if na == T::zero() {
        return (T::zero(), cone());
    }
    let nu = na.hypot(nb);
    let c = na / nu;
    let s = (a / creal(na)) * b.conj() / creal(nu);
    (c, s)
}

fn qr_sweep<T: Scalar>(h: &mut CMatrix<T>, lo: usize, hi: usize, shift: Complex<T>) {
    for i in lo..=hi {
        h[(i, i)] = h[(i, i)] - shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        let cc = creal(c);
        for j in k..=hi {
            let a = h[(k, j)];
            let b = h[(k + 1, j)];
            h[(k, j)] = cc * a + s * b;
            h[(k + 1, j)] = cc * b - s.conj() * a;
        }
        h[(k + 1, k)] = czero();
        rotations.push((cc, s));
    }
    for (offset, (cc, s)) in rotations.into_iter().enumerate() {
        let k = lo + offset;
        for i in lo..=(k + 2).min(hi) {
            let a = h[(i, k)];
            let b = h[(i, k + 1)];
            h[(i, k)] = a * cc + b * s.conj();
            h[(i, k + 1)] = b * cc - a * s;
        }
    }
    for i in lo..=hi {
        h[(i, i)] = h[(i, i)] + shift;
    }
}

/// Unit eigenvector for an (approximate) eigenvalue, by inverse iteration.
pub fn eigenvector<T: Scalar>(m: &CMatrix<T>, lambda: Complex<T>) -> Result<Vec<Complex<T>>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let n = m.rows();
    let scale = m.frobenius_norm().max(T::one());
    let nudge = creal(T::epsilon() * scale * T::lit(8.0));
    let mut shifted = m.clone();
    for i in 0..n {
        shifted[(i, i)] = shifted[(i, i)] - lambda - nudge;
    }
    let mut x: Vec<Complex<T>> = (0..n)
        .map(|i| creal(T::one() + T::lit(0.1) * T::from_usize(i).unwrap_or_else(T::zero)))
        .collect();
    for _ in 0..4 {
        x = solve(&shifted, &x)?;
        let norm = x.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt();
        if norm == T::zero() || !norm.is_finite() {
            return Err(Error::Convergence {
                iterations: 0,
                residual: f64::NAN,
            });
        }
        for z in x.iter_mut() {
            *z = *z / creal(norm);
        }
    }
    Ok(x)
}

/// Gaussian elimination with partial pivoting; exact-zero pivots are replaced
/// by a tiny value so nearly singular systems (inverse iteration) still solve.
fn solve<T: Scalar>(a: &CMatrix<T>, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let n = a.rows();
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    let tiny = creal(T::epsilon() * m.frobenius_norm().max(T::one()));
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| {
                m[(i, k)]
                    .norm()
                    .partial_cmp(&m[(j, k)].norm())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(k);
        if pivot != k {
            for j in 0..n {
                let tmp = m[(k, j)];
                m[(k, j)] = m[(pivot, j)];
                m[(pivot, j)] = tmp;
            }
            rhs.swap(k, pivot);
        }
        if m[(k, k)].norm() == T::zero() {
            m[(k, k)] = tiny;
        }
        let p = m[(k, k)];
        for i in k + 1..n {
            let f = m[(i, k)] / p;
            if f == czero() {
                continue;
            }
            for j in k..n {
                let v = m[(k, j)];
                m[(i, j)] = m[(i, j)] - f * v;
            }
            let r = rhs[k];
            rhs[i] = rhs[i] - f * r;
        }
    }
    let mut x = vec![czero(); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        for j in i + 1..n {
            acc = acc - m[(i, j)] * x[j];
        }
        x[i] = acc / m[(i, i)];
    }
    Ok(x)
}
