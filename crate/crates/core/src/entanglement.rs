//! Pairwise concurrence of general W states.
//!
//! Two independent routes are provided. The Wootters route works on any
//! two-qubit density matrix: spin-flip, form `R = rho * rho~`, take the
//! eigenvalues of `R` with a general complex eigensolver and combine their
//! square roots. The closed-form route uses only the W coefficients:
//! `C_mn = 2|c_m||c_n|`, plus the normalized total and mirror-pair aggregates.

use num_complex::Complex;

use crate::density::{partial_trace_pure, DensityMatrix};
use crate::eigen::eig_general;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{c, creal, Scalar};
use crate::wspec::WSpec;

/// Eigenvalues of `R` whose magnitude is below this multiple of
/// `eps * ||R||_F` are indistinguishable from rounding noise and are set to 0.
const EIGEN_NOISE_FACTOR: f64 = 64.0;

/// `sigma_y ⊗ sigma_y` in the `(00, 01, 10, 11)` basis.
pub fn sigma_yy<T: Scalar>() -> CMatrix<T> {
    let sy = CMatrix::from_rows(&[
        vec![c(0.0, 0.0), c(0.0, -1.0)],
        vec![c(0.0, 1.0), c(0.0, 0.0)],
    ])
    .expect("2x2");
    sy.kron(&sy)
}

/// `(sigma_y ⊗ sigma_y) rho* (sigma_y ⊗ sigma_y)`.
pub fn spin_flip<T: Scalar>(rho: &DensityMatrix<T>) -> Result<CMatrix<T>> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let yy = sigma_yy();
    Ok(&(&yy * &rho.entries().conj()) * &yy)
}

/// Wootters concurrence with the sorted eigenvalues of `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct WoottersConcurrence<T> {
    pub concurrence: T,
    /// `lambda_1 >= ... >= lambda_4 >= 0`.
    pub eigenvalues: [T; 4],
}

pub fn wootters_concurrence<T: Scalar>(rho: &DensityMatrix<T>) -> Result<WoottersConcurrence<T>> {
    let flipped = spin_flip(rho)?;
    let r = rho.entries() * &flipped;
    let floor = T::epsilon() * T::lit(EIGEN_NOISE_FACTOR) * r.frobenius_norm();
    let mut lambdas: Vec<T> = eig_general(&r)?
        .into_iter()
        .map(|z| if z.re <= floor { T::zero() } else { z.re })
        .collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let eigenvalues = [lambdas[0], lambdas[1], lambdas[2], lambdas[3]];
    let roots: Vec<T> = eigenvalues.iter().map(|l| l.sqrt()).collect();
    let concurrence = (roots[0] - roots[1] - roots[2] - roots[3]).max(T::zero());
    Ok(WoottersConcurrence {
        concurrence: concurrence.min(T::one()),
        eigenvalues,
    })
}

fn check_pair<T: Scalar>(w: &WSpec<T>, m: usize, n: usize) -> Result<()> {
    w.check_qubit(m)?;
    w.check_qubit(n)?;
    if m == n {
        return Err(Error::Index(format!("pair ({m}, {n}) repeats a qubit")));
    }
    Ok(())
}

/// Closed-form two-qubit reduction of `|W><W|` onto qubits `(m, n)`, basis
/// `(|0_m 0_n>, |0_m 1_n>, |1_m 0_n>, |1_m 1_n>)`.
pub fn w_reduced_density<T: Scalar>(w: &WSpec<T>, m: usize, n: usize) -> Result<DensityMatrix<T>> {
    check_pair(w, m, n)?;
    let (cm, cn) = (w.coeff(m), w.coeff(n));
    // sum over the other qubits directly, rather than 1 - |c_m|^2 - |c_n|^2
    let rest = w
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i + 1 != m && *i + 1 != n)
        .fold(T::zero(), |acc, (_, z)| acc + z.norm_sqr());
    let mut e = CMatrix::zeros(4, 4);
    e[(0, 0)] = creal(rest);
    e[(1, 1)] = creal(cn.norm_sqr());
    e[(1, 2)] = cn * cm.conj();
    e[(2, 1)] = cm * cn.conj();
    e[(2, 2)] = creal(cm.norm_sqr());
    DensityMatrix::new(e)
}

/// `2 |c_m| |c_n|`.
pub fn w_pair_concurrence<T: Scalar>(w: &WSpec<T>, m: usize, n: usize) -> Result<T> {
    check_pair(w, m, n)?;
    Ok(T::lit(2.0) * w.coeff(m).norm() * w.coeff(n).norm())
}

/// Both routes for one pair side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceReport<T> {
    pub pair: (usize, usize),
    pub closed_form: T,
    pub wootters: T,
    pub eigenvalues: [T; 4],
}

/// Closed form against the Wootters value of the brute-force partial trace of
/// the full W state.
pub fn pair_report<T: Scalar>(w: &WSpec<T>, m: usize, n: usize) -> Result<ConcurrenceReport<T>> {
    let closed_form = w_pair_concurrence(w, m, n)?;
    let rho = partial_trace_pure(&w.to_state()?, &[m, n])?;
    let wc = wootters_concurrence(&rho)?;
    Ok(ConcurrenceReport {
        pair: (m, n),
        closed_form,
        wootters: wc.concurrence,
        eigenvalues: wc.eigenvalues,
    })
}

/// Symmetric matrix of closed-form pair concurrences, zero diagonal.
pub fn pairwise_matrix<T: Scalar>(w: &WSpec<T>) -> Vec<Vec<T>> {
    let n = w.num_qubits();
    let mags: Vec<T> = w.coeffs().iter().map(|z| z.norm()).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        T::zero()
                    } else {
                        T::lit(2.0) * mags[i] * mags[j]
                    }
                })
                .collect()
        })
        .collect()
}

/// Normalized total concurrence
/// `sqrt(N/(N-1) * sum_{m != n} |c_m|^2 |c_n|^2)`, ordered pairs.
///
/// Equals 1 exactly when all `|c_i|` agree.
pub fn total_concurrence<T: Scalar>(w: &WSpec<T>) -> T {
    let n = T::from_usize(w.num_qubits()).expect("register size fits scalar");
    let p: Vec<T> = w.coeffs().iter().map(|z| z.norm_sqr()).collect();
    // sum_{m != n} p_m p_n = (sum p)^2 - sum p^2
    let s1 = p.iter().fold(T::zero(), |a, &x| a + x);
    let s2 = p.iter().fold(T::zero(), |a, &x| a + x * x);
    let ordered = (s1 * s1 - s2).max(T::zero());
    (n / (n - T::one()) * ordered).sqrt()
}

/// Unnormalized total `sqrt(1/2 * sum_{m != n} C_mn^2)` over ordered pairs.
pub fn unnormalized_total_concurrence<T: Scalar>(w: &WSpec<T>) -> T {
    let matrix = pairwise_matrix(w);
    let sum = matrix
        .iter()
        .flatten()
        .fold(T::zero(), |acc, &x| acc + x * x);
    (sum / T::lit(2.0)).sqrt()
}

/// Mirror-pair aggregate `2 sum_j |c_j||c_{N+1-j}|`.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorConcurrence<T> {
    pub value: T,
    /// For odd N the summation range reaches the middle qubit, whose term
    /// pairs the qubit with itself and contributes `2|c_j|^2`.
    pub self_pair: Option<usize>,
}

pub fn mirror_concurrence<T: Scalar>(w: &WSpec<T>) -> MirrorConcurrence<T> {
    let n = w.num_qubits();
    let upper = n.div_ceil(2);
    let value = (1..=upper).fold(T::zero(), |acc, j| {
        acc + T::lit(2.0) * w.coeff(j).norm() * w.coeff(n + 1 - j).norm()
    });
    MirrorConcurrence {
        value,
        self_pair: (n % 2 == 1).then_some(upper),
    }
}

/// Concurrence of the pure two-qubit state `c1|01> + c2|10>`.
pub fn two_qubit_w_concurrence<T: Scalar>(c1: Complex<T>, c2: Complex<T>) -> T {
    T::lit(2.0) * c1.norm() * c2.norm()
}

/// Density matrix of a normalized two-qubit pure state, for Wootters checks.
pub fn pure_pair_density<T: Scalar>(amps: [Complex<T>; 4]) -> Result<DensityMatrix<T>> {
    let norm = amps.iter().fold(T::zero(), |a, z| a + z.norm_sqr());
    if (norm - T::one()).abs() > T::tolerances().exact {
        return Err(Error::NotNormalized {
            norm_sqr: norm.to_f64_lossy(),
        });
    }
    DensityMatrix::new(CMatrix::outer(&amps, &amps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c64 as c;

    fn bell() -> DensityMatrix<f64> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        pure_pair_density([c(0.0, 0.0), c(s, 0.0), c(s, 0.0), c(0.0, 0.0)]).unwrap()
    }

    #[test]
    fn spin_flip_examples() {
        let mixed = DensityMatrix::new(CMatrix::<f64>::identity(4).scale(c(0.25, 0.0))).unwrap();
        assert!(spin_flip(&mixed).unwrap().max_abs_diff(mixed.entries()) < 1e-15);

        let p01 = pure_pair_density([c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let p10 = pure_pair_density([c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(spin_flip(&p01).unwrap().max_abs_diff(p10.entries()) < 1e-15);

        let b = bell();
        assert!(spin_flip(&b).unwrap().max_abs_diff(b.entries()) < 1e-15);
    }

    #[test]
    fn spin_flip_rejects_wrong_dimension() {
        let one = DensityMatrix::new(
            CMatrix::<f64>::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            spin_flip(&one),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn wootters_examples() {
        let wb = wootters_concurrence(&bell()).unwrap();
        assert!((wb.concurrence - 1.0).abs() < 1e-12);
        // lambdas of the Bell state: (1, 0, 0, 0)
        assert!((wb.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!(wb.eigenvalues[1..].iter().all(|&l| l.abs() < 1e-12));

        let p00 = pure_pair_density([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(wootters_concurrence(&p00).unwrap().concurrence, 0.0);
    }

    #[test]
    fn uniform_w3_pair() {
        let w = WSpec::<f64>::uniform(3).unwrap();
        let rho = w_reduced_density(&w, 1, 2).unwrap();
        let t = 1.0 / 3.0;
        let want = CMatrix::from_real_rows(&[
            &[t, 0.0, 0.0, 0.0],
            &[0.0, t, t, 0.0],
            &[0.0, t, t, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
        ])
        .unwrap();
        assert!(rho.entries().max_abs_diff(&want) < 1e-15);
        let wc = wootters_concurrence(&rho).unwrap().concurrence;
        assert!((wc - 2.0 / 3.0).abs() < 1e-12);
        assert!((w_pair_concurrence(&w, 1, 2).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn reduced_density_edge_cases() {
        let w = WSpec::<f64>::from_real(&[1.0, 0.0, 0.0]).unwrap();
        let rho = w_reduced_density(&w, 2, 3).unwrap();
        let want = CMatrix::from_diagonal(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(rho.entries(), &want);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let w2 = WSpec::<f64>::from_real(&[s, s]).unwrap();
        let rho = w_reduced_density(&w2, 1, 2).unwrap();
        assert!(rho.get(0, 0).norm() < 1e-15);
        assert!((w_pair_concurrence(&w2, 1, 2).unwrap() - 1.0).abs() < 1e-15);

        assert!(matches!(w_reduced_density(&w, 2, 2), Err(Error::Index(_))));
        assert!(matches!(w_pair_concurrence(&w, 1, 1), Err(Error::Index(_))));
        assert_eq!(w_pair_concurrence(&w, 2, 3).unwrap(), 0.0);
    }

    #[test]
    fn total_concurrence_examples() {
        for n in 2..=12 {
            let w = WSpec::<f64>::uniform(n).unwrap();
            assert!((total_concurrence(&w) - 1.0).abs() < 1e-12, "N = {n}");
        }
        let single = WSpec::<f64>::from_real(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(total_concurrence(&single), 0.0);

        let w2 = WSpec::<f64>::uniform(2).unwrap();
        let wc = pair_report(&w2, 1, 2).unwrap().wootters;
        assert!((total_concurrence(&w2) - wc).abs() < 1e-12);
    }

    #[test]
    fn unnormalized_total_exceeds_one_at_uniform() {
        let w = WSpec::<f64>::uniform(4).unwrap();
        let raw = unnormalized_total_concurrence(&w);
        // sqrt(2 (1 - 1/N)) at uniform coefficients
        assert!((raw - (2.0f64 * 0.75).sqrt()).abs() < 1e-12);
        assert!((raw / (2.0f64 * 0.75).sqrt() - total_concurrence(&w)).abs() < 1e-12);
    }

    #[test]
    fn mirror_examples() {
        let w4 = WSpec::<f64>::uniform(4).unwrap();
        let m = mirror_concurrence(&w4);
        assert!((m.value - 1.0).abs() < 1e-15);
        assert_eq!(m.self_pair, None);

        let w2 = WSpec::<f64>::from_real(&[0.6, 0.8]).unwrap();
        assert!((mirror_concurrence(&w2).value - 0.96).abs() < 1e-15);
        assert!((two_qubit_w_concurrence(c(0.6, 0.0), c(0.8, 0.0)) - 0.96).abs() < 1e-15);

        let single = WSpec::<f64>::from_real(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(mirror_concurrence(&single).value, 0.0);

        let w3 = WSpec::<f64>::uniform(3).unwrap();
        let m3 = mirror_concurrence(&w3);
        assert_eq!(m3.self_pair, Some(2));
        // 2|c1||c3| + 2|c2|^2 = 4/3
        assert!((m3.value - 4.0 / 3.0).abs() < 1e-15);
    }
}
