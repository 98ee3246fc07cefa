//! Reproducible Monte Carlo draws over an exact branch table.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ProtocolReport;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleTally {
    pub trials: u64,
    pub successes: u64,
    /// Hits per branch, in the report's branch order.
    pub counts: Vec<u64>,
}

/// Draws `trials` outcomes. Trial `i` uses its own generator seeded with
/// `seed + i`, so results do not depend on evaluation order.
pub fn sample_report<T: Scalar>(report: &ProtocolReport<T>, trials: u64, seed: u64) -> SampleTally {
    let probs: Vec<f64> = report
        .branches
        .iter()
        .map(|b| b.probability.to_f64_lossy())
        .collect();
    let total: f64 = probs.iter().sum();
    let cut = 1.0 - T::tolerances().fidelity.to_f64_lossy();
    let success: Vec<bool> = report
        .branches
        .iter()
        .map(|b| b.heralded && b.bob_fidelity.to_f64_lossy() > cut)
        .collect();

    let mut counts = vec![0u64; probs.len()];
    let mut successes = 0u64;
    for i in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
        let u: f64 = rng.gen::<f64>() * total;
        let mut acc = 0.0;
        let mut pick = probs.len().saturating_sub(1);
        for (k, p) in probs.iter().enumerate() {
            acc += p;
            if u < acc {
                pick = k;
                break;
            }
        }
        if let Some(slot) = counts.get_mut(pick) {
            *slot += 1;
            if success[pick] {
                successes += 1;
            }
        }
    }
    SampleTally {
        trials,
        successes,
        counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::run_qst;
    use crate::scalar::c64 as c;
    use crate::state::StateVector;
    use crate::wspec::WSpec;

    #[test]
    fn same_seed_same_tally() {
        let w = WSpec::<f64>::uniform(4).unwrap();
        let input = StateVector::qubit(c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        let run = run_qst(&w, &input).unwrap();
        let a = sample_report(&run.report, 500, 7);
        let b = sample_report(&run.report, 500, 7);
        assert_eq!(a, b);
        assert_eq!(a.counts.iter().sum::<u64>(), 500);
        let rate = a.successes as f64 / 500.0;
        assert!((rate - 0.5).abs() < 0.1, "rate {rate}");
    }
}
