//! Remote preparation of a known real qubit state over a W register.
//!
//! The endpoints of the register are rewritten in the rotated basis
//! `phi = alpha|0> + beta|1>`, `psi = beta|0> - alpha|1>`. After the middle
//! qubits are projected onto `|0..0>`, measuring qubit 1 in `{phi, psi}`
//! leaves qubit N in a definite rotated-basis state whenever `c_1 = -c_N`.

use num_complex::Complex;

use super::{ProtocolBranch, ProtocolReport, Target};
use crate::error::{Error, Result};
use crate::scalar::{creal, czero, Scalar};
use crate::state::StateVector;
use crate::wspec::WSpec;

/// Orthonormal one-qubit basis built from a known real state.
#[derive(Debug, Clone, PartialEq)]
pub struct RotatedBasis<T> {
    pub alpha: T,
    pub beta: T,
    /// `alpha|0> + beta|1>`
    pub phi: StateVector<T>,
    /// `beta|0> - alpha|1>`
    pub psi: StateVector<T>,
}

pub fn rotated_basis<T: Scalar>(alpha: T, beta: T) -> Result<RotatedBasis<T>> {
    let norm = alpha * alpha + beta * beta;
    if (norm - T::one()).abs() > T::tolerances().exact {
        return Err(Error::NotNormalized {
            norm_sqr: norm.to_f64_lossy(),
        });
    }
    Ok(RotatedBasis {
        alpha,
        beta,
        phi: StateVector::qubit(creal(alpha), creal(beta))?,
        psi: StateVector::qubit(creal(beta), creal(-alpha))?,
    })
}

impl<T: Scalar> RotatedBasis<T> {
    /// `(<phi|v>, <psi|v>)` for a one-qubit amplitude pair.
    fn coords(&self, v0: Complex<T>, v1: Complex<T>) -> (Complex<T>, Complex<T>) {
        let (a, b) = (creal(self.alpha), creal(self.beta));
        (a * v0 + b * v1, b * v0 - a * v1)
    }

    fn ket(&self, which: Target) -> &StateVector<T> {
        match which {
            Target::Phi => &self.phi,
            _ => &self.psi,
        }
    }
}

/// Coefficients of a two-qubit state in the product basis
/// `{phi, psi} ⊗ {phi, psi}` (first factor = first qubit).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedExpansion<T> {
    pub phi_phi: Complex<T>,
    pub phi_psi: Complex<T>,
    pub psi_phi: Complex<T>,
    pub psi_psi: Complex<T>,
}

impl<T: Scalar> RotatedExpansion<T> {
    /// Computational-basis amplitudes `(00, 01, 10, 11)` obtained by summing
    /// the rotated kets back up.
    pub fn reconstruct(&self, basis: &RotatedBasis<T>) -> [Complex<T>; 4] {
        let terms = [
            (self.phi_phi, &basis.phi, &basis.phi),
            (self.phi_psi, &basis.phi, &basis.psi),
            (self.psi_phi, &basis.psi, &basis.phi),
            (self.psi_psi, &basis.psi, &basis.psi),
        ];
        let mut out = [czero(); 4];
        for (coef, first, second) in terms {
            for i in 0..2 {
                for j in 0..2 {
                    out[2 * i + j] =
                        out[2 * i + j] + coef * first.amplitude(i) * second.amplitude(j);
                }
            }
        }
        out
    }

    pub fn norm_sqr(&self) -> T {
        self.phi_phi.norm_sqr()
            + self.phi_psi.norm_sqr()
            + self.psi_phi.norm_sqr()
            + self.psi_psi.norm_sqr()
    }

    /// Unnormalized second-qubit amplitudes left by `<first|` on qubit 1.
    fn conditional(&self, first: Target, basis: &RotatedBasis<T>) -> [Complex<T>; 2] {
        let (on_phi, on_psi) = match first {
            Target::Phi => (self.phi_phi, self.phi_psi),
            _ => (self.psi_phi, self.psi_psi),
        };
        [
            on_phi * basis.phi.amplitude(0) + on_psi * basis.psi.amplitude(0),
            on_phi * basis.phi.amplitude(1) + on_psi * basis.psi.amplitude(1),
        ]
    }
}

/// Expands amplitudes `(00, 01, 10, 11)` in the rotated product basis.
pub fn expand_pair<T: Scalar>(
    amps: [Complex<T>; 4],
    basis: &RotatedBasis<T>,
) -> RotatedExpansion<T> {
    // first rotate qubit 2 within each value of qubit 1, then qubit 1
    let (r0_phi, r0_psi) = basis.coords(amps[0], amps[1]);
    let (r1_phi, r1_psi) = basis.coords(amps[2], amps[3]);
    let (phi_phi, psi_phi) = basis.coords(r0_phi, r1_phi);
    let (phi_psi, psi_psi) = basis.coords(r0_psi, r1_psi);
    RotatedExpansion {
        phi_phi,
        phi_psi,
        psi_phi,
        psi_psi,
    }
}

/// A W state with qubits 1 and N rewritten in the rotated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct WExpansion<T> {
    /// Endpoint coefficients on the term with every middle qubit in `|0>`.
    pub endpoints: RotatedExpansion<T>,
    /// `(k, c_k)` for each middle qubit k; both endpoints of those terms are
    /// `|0> = alpha|phi> + beta|psi>`.
    pub middle: Vec<(usize, Complex<T>)>,
}

impl<T: Scalar> WExpansion<T> {
    /// Full `2^N` amplitude vector rebuilt from the rotated kets.
    pub fn reconstruct(&self, basis: &RotatedBasis<T>) -> Result<StateVector<T>> {
        let n = self.middle.len() + 2;
        let mut amps = vec![czero(); 1 << n];
        let endpoint_index = |a: usize, b: usize| (a << (n - 1)) | b;
        let pair = self.endpoints.reconstruct(basis);
        for a in 0..2 {
            for b in 0..2 {
                amps[endpoint_index(a, b)] = pair[2 * a + b];
            }
        }
        let zero_ket: Vec<Complex<T>> = (0..2)
            .map(|i| {
                creal(basis.alpha) * basis.phi.amplitude(i)
                    + creal(basis.beta) * basis.psi.amplitude(i)
            })
            .collect();
        for &(k, ck) in &self.middle {
            let mid_bit = 1usize << (n - k);
            for a in 0..2 {
                for b in 0..2 {
                    let idx = endpoint_index(a, b) | mid_bit;
                    amps[idx] = amps[idx] + ck * zero_ket[a] * zero_ket[b];
                }
            }
        }
        StateVector::from_amplitudes_unnormalized(amps)
    }
}

pub fn expand_w<T: Scalar>(w: &WSpec<T>, basis: &RotatedBasis<T>) -> WExpansion<T> {
    let n = w.num_qubits();
    // middle-zero sector: c_1 |1_1 0_N> + c_N |0_1 1_N>
    let endpoints = expand_pair([czero(), w.last(), w.first(), czero()], basis);
    WExpansion {
        endpoints,
        middle: (2..n).map(|k| (k, w.coeff(k))).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreparationReport<T> {
    /// Branches: `mid!=0` (herald failed), then the `phi` and `psi` outcomes
    /// of measuring qubit 1. Success means the last qubit is left in a
    /// definite rotated-basis state.
    pub report: ProtocolReport<T>,
    pub expansion: RotatedExpansion<T>,
    /// Probability that the middle qubits read `0..0` (1 for two qubits).
    pub middle_probability: T,
    /// Probability that the last qubit ends exactly in `phi`.
    pub target_probability: T,
    /// `c_1 = -c_N` to working precision.
    pub condition_holds: bool,
}

fn endpoint_branches<T: Scalar>(
    expansion: &RotatedExpansion<T>,
    basis: &RotatedBasis<T>,
) -> Result<(Vec<ProtocolBranch<T>>, T)> {
    let cut = T::one() - T::tolerances().fidelity;
    let mut branches = Vec::new();
    let mut target_probability = T::zero();
    for (label, first) in [("phi", Target::Phi), ("psi", Target::Psi)] {
        let amps = expansion.conditional(first, basis);
        let probability = amps[0].norm_sqr() + amps[1].norm_sqr();
        if probability <= T::tolerances().prune {
            branches.push(ProtocolBranch {
                outcome: label.to_string(),
                heralded: true,
                probability,
                bob_state: None,
                target: None,
                bob_fidelity: T::zero(),
            });
            continue;
        }
        let bob = StateVector::normalized_from(amps.to_vec())?;
        let f_phi = bob.fidelity(basis.ket(Target::Phi))?;
        let f_psi = bob.fidelity(basis.ket(Target::Psi))?;
        let (target, fidelity) = if f_phi >= f_psi {
            (Target::Phi, f_phi)
        } else {
            (Target::Psi, f_psi)
        };
        if target == Target::Phi && fidelity > cut {
            target_probability = target_probability + probability;
        }
        branches.push(ProtocolBranch {
            outcome: label.to_string(),
            heralded: true,
            probability,
            bob_state: Some(bob),
            target: Some(target),
            bob_fidelity: fidelity,
        });
    }
    Ok((branches, target_probability))
}

fn anti_aligned<T: Scalar>(c1: Complex<T>, cn: Complex<T>) -> bool {
    (c1 + cn).norm() <= T::tolerances().exact
}

/// Two-qubit version on `c_1|01> + c_2|10>`, measuring qubit 1.
pub fn prepare_two_qubit<T: Scalar>(
    c1: Complex<T>,
    c2: Complex<T>,
    basis: &RotatedBasis<T>,
) -> Result<PreparationReport<T>> {
    let norm = c1.norm_sqr() + c2.norm_sqr();
    if (norm - T::one()).abs() > T::tolerances().exact {
        return Err(Error::NotNormalized {
            norm_sqr: norm.to_f64_lossy(),
        });
    }
    let expansion = expand_pair([czero(), c1, c2, czero()], basis);
    let (branches, target_probability) = endpoint_branches(&expansion, basis)?;
    let condition_holds = anti_aligned(c1, c2);
    let claimed = condition_holds.then(|| T::lit(2.0) * c1.norm_sqr());
    Ok(PreparationReport {
        report: ProtocolReport::from_branches(branches, claimed),
        expansion,
        middle_probability: T::one(),
        target_probability,
        condition_holds,
    })
}

/// W-register version: project qubits `2..N-1` onto `|0..0>`, then measure
/// qubit 1 in the rotated basis and read off qubit N.
pub fn prepare_w<T: Scalar>(w: &WSpec<T>, basis: &RotatedBasis<T>) -> Result<PreparationReport<T>> {
    let n = w.num_qubits();
    if n == 2 {
        // qubit 1 carries c_1 on |10>, qubit 2 carries c_2 on |01>
        return prepare_two_qubit(w.last(), w.first(), basis);
    }
    let state = w.to_state()?;
    let middle: Vec<usize> = (2..n).collect();
    let zeros = "0".repeat(middle.len());
    let projected = state.project_unnormalized(&middle, &zeros)?;
    let middle_probability = projected.norm_sqr();
    let a = projected.amplitudes();
    let expansion = expand_pair([a[0], a[1], a[2], a[3]], basis);

    let (endpoint, target_probability) = endpoint_branches(&expansion, basis)?;
    let mut branches = vec![ProtocolBranch {
        outcome: "mid!=0".to_string(),
        heralded: false,
        probability: (T::one() - middle_probability).max(T::zero()),
        bob_state: None,
        target: None,
        bob_fidelity: T::zero(),
    }];
    branches.extend(endpoint);
    let condition_holds = anti_aligned(w.first(), w.last());
    let claimed = condition_holds.then(|| T::lit(2.0) * w.first().norm_sqr());
    Ok(PreparationReport {
        report: ProtocolReport::from_branches(branches, claimed),
        expansion,
        middle_probability,
        target_probability,
        condition_holds,
    })
}
