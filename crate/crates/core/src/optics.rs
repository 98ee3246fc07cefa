//! Single-photon beam-splitter chain that spreads one excitation over N modes.
//!
//! Splitter k reflects a fraction `r_k` of the incoming amplitude into output
//! mode k and transmits `sqrt(1 - r_k^2)` downstream; mode N collects whatever
//! passes the last splitter. Splitters are real and lossless. Target phases are
//! applied afterwards by one ideal phase shifter per output mode.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{czero, Scalar};
use crate::state::{basis_label, StateVector};
use crate::wspec::WSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct BeamSplitterChain<T> {
    reflectivities: Vec<T>,
    phases: Vec<T>,
}

impl<T: Scalar> BeamSplitterChain<T> {
    /// `N - 1` reflectivities in `[0, 1]` and `N` output phases.
    pub fn new(reflectivities: Vec<T>, phases: Vec<T>) -> Result<Self> {
        if reflectivities.is_empty() {
            return Err(Error::Construction(
                "a chain needs at least one splitter".into(),
            ));
        }
        if phases.len() != reflectivities.len() + 1 {
            return Err(Error::DimensionMismatch {
                expected: reflectivities.len() + 1,
                found: phases.len(),
            });
        }
        if let Some((k, r)) = reflectivities
            .iter()
            .enumerate()
            .find(|(_, r)| !(**r >= T::zero() && **r <= T::one()))
        {
            return Err(Error::Construction(format!(
                "reflectivity {} = {} is outside [0, 1]",
                k + 1,
                r
            )));
        }
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::Construction("phases must be finite".into()));
        }
        Ok(Self {
            reflectivities,
            phases,
        })
    }

    /// Chain without output phase shifters.
    pub fn from_reflectivities(reflectivities: Vec<T>) -> Result<Self> {
        let phases = vec![T::zero(); reflectivities.len() + 1];
        Self::new(reflectivities, phases)
    }

    pub fn reflectivities(&self) -> &[T] {
        &self.reflectivities
    }

    pub fn phases(&self) -> &[T] {
        &self.phases
    }

    pub fn num_modes(&self) -> usize {
        self.reflectivities.len() + 1
    }

    pub fn transmissivities(&self) -> Vec<T> {
        self.reflectivities
            .iter()
            .map(|&r| transmissivity(r))
            .collect()
    }
}

fn transmissivity<T: Scalar>(r: T) -> T {
    ((T::one() - r) * (T::one() + r)).max(T::zero()).sqrt()
}

/// One photon spread over N modes.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeState<T> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Scalar> ModeState<T> {
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidArgument(
                "mode state needs at least one mode".into(),
            ));
        }
        let norm = amplitudes
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr());
        if (norm - T::one()).abs() > T::tolerances().exact {
            return Err(Error::NotNormalized {
                norm_sqr: norm.to_f64_lossy(),
            });
        }
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn num_modes(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn magnitudes(&self) -> Vec<T> {
        self.amplitudes.iter().map(|a| a.norm()).collect()
    }
}

/// Designs the chain whose output magnitudes and phases match `target`.
pub fn design_chain<T: Scalar>(target: &WSpec<T>) -> Result<BeamSplitterChain<T>> {
    let mags: Vec<T> = target.coeffs().iter().map(|c| c.norm()).collect();
    let reflectivities = design_chain_for_amplitudes(&mags)?;
    let phases = target
        .coeffs()
        .iter()
        .map(|c| {
            if c.norm_sqr() > T::zero() {
                c.arg()
            } else {
                T::zero()
            }
        })
        .collect();
    BeamSplitterChain::new(reflectivities, phases)
}

/// Reflectivities for target magnitudes `|c_1|, ..., |c_N|`.
///
/// Splitter k sees the amplitude left over by the earlier ones,
/// `1 - sum_{j<k} |c_j|^2`, and must reflect `|c_k|` of it.
pub fn design_chain_for_amplitudes<T: Scalar>(mags: &[T]) -> Result<Vec<T>> {
    if mags.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least two output modes, got {}",
            mags.len()
        )));
    }
    if mags.iter().any(|m| !(m.is_finite() && *m >= T::zero())) {
        return Err(Error::InvalidArgument(
            "magnitudes must be finite and nonnegative".into(),
        ));
    }
    let tol = T::tolerances().exact;
    let squares: Vec<T> = mags.iter().map(|&m| m * m).collect();
    let total = squares.iter().fold(T::zero(), |acc, &s| acc + s);
    // 1 - prefix, evaluated as (tail) + (1 - total) to keep small tails accurate
    let defect = T::one() - total;
    let mut tail = total;
    let mut reflectivities = Vec::with_capacity(mags.len() - 1);
    for (k, (&m, &sq)) in mags.iter().zip(&squares).enumerate() {
        let remaining = tail + defect;
        if k == mags.len() - 1 {
            if (remaining - sq).abs() > tol {
                return Err(Error::InfeasibleTarget(format!(
                    "last mode receives {} but the target asks for {}",
                    remaining.max(T::zero()),
                    sq
                )));
            }
            break;
        }
        let r = if m <= tol {
            T::zero()
        } else if remaining <= T::zero() {
            return Err(Error::InfeasibleTarget(format!(
                "amplitude is exhausted before mode {} (|c| = {})",
                k + 1,
                m
            )));
        } else {
            let r = m / remaining.sqrt();
            if r > T::one() + tol {
                return Err(Error::InfeasibleTarget(format!(
                    "mode {} needs reflectivity {} > 1",
                    k + 1,
                    r
                )));
            }
            r.min(T::one())
        };
        reflectivities.push(r);
        tail = tail - sq;
    }
    Ok(reflectivities)
}

/// Output mode amplitudes of a chain fed with one photon.
pub fn simulate_chain<T: Scalar>(chain: &BeamSplitterChain<T>) -> ModeState<T> {
    let mut amplitudes = Vec::with_capacity(chain.num_modes());
    let mut passing = T::one();
    for &r in &chain.reflectivities {
        amplitudes.push(r * passing);
        passing = passing * transmissivity(r);
    }
    amplitudes.push(passing);
    let amplitudes = amplitudes
        .into_iter()
        .zip(&chain.phases)
        .map(|(a, &p)| Complex::from_polar(a, p))
        .collect();
    ModeState { amplitudes }
}

/// W register stored in N cavities, plus the mode each cavity qubit came from.
#[derive(Debug, Clone, PartialEq)]
pub struct CavityRegister<T> {
    pub spec: WSpec<T>,
    /// `index_map[q - 1]` is the output mode (1-based) captured by cavity qubit `q`.
    pub index_map: Vec<usize>,
}

/// Captures mode k in cavity k: the photon in mode k becomes `|1>` on qubit k.
pub fn cavity_register<T: Scalar>(mode: &ModeState<T>) -> Result<CavityRegister<T>> {
    let spec = WSpec::new(mode.amplitudes.clone())?;
    Ok(CavityRegister {
        index_map: (1..=spec.num_qubits()).collect(),
        spec,
    })
}

/// Same capture for a state given in occupation-number form over `2^N` basis
/// states. Any weight outside the single-photon sector is rejected.
pub fn cavity_register_from_occupation<T: Scalar>(
    occupation: &StateVector<T>,
) -> Result<CavityRegister<T>> {
    let n = occupation.num_qubits();
    let tol = T::tolerances().exact;
    let mut amplitudes = vec![czero(); n];
    for (index, a) in occupation.amplitudes().iter().enumerate() {
        if index.count_ones() == 1 {
            // big-endian: qubit q sits on bit n - q
            let q = n - index.trailing_zeros() as usize;
            amplitudes[q - 1] = *a;
        } else if a.norm() > tol {
            return Err(Error::MultiExcitation(format!(
                "amplitude {} on |{}> has {} photons",
                a,
                basis_label(index, n),
                index.count_ones()
            )));
        }
    }
    cavity_register(&ModeState::new(amplitudes)?)
}
