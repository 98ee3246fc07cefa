//! Transfer of an unknown qubit from the holder of W qubit 1 to the holder of
//! W qubit N.
//!
//! Register layout: qubit 1 is the input `alpha|0> + beta|1>`, qubits
//! `2..=N+1` are the W register (W qubit k at position k+1). The sender
//! applies CNOT(1 -> 2) and a Hadamard on qubit 1 and measures qubits 1 and 2.
//! On each outcome the receiver applies the balancing unitary to the remaining
//! register, corrects its own qubit, and keeps the run only if the middle
//! qubits are all `0`.
//!
//! Two-qubit registers have no middle qubit to absorb the rebalanced amplitude,
//! so an ancilla in `|0>` is inserted between the two W qubits. That is the
//! same as running on the three-qubit register `(c_1, 0, c_2)`.

use num_complex::Complex;

use super::balancer::{build_balancer, compute_t, BalancerSpec, ScaledComponent};
use super::{ProtocolBranch, ProtocolReport, Target};
use crate::error::{Error, Result};
use crate::scalar::{cone, czero, Scalar};
use crate::state::{gates, StateVector};
use crate::wspec::WSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct QstRun<T> {
    pub report: ProtocolReport<T>,
    pub balancer: BalancerSpec<T>,
    /// An ancilla stood in for the missing middle qubit (N = 2).
    pub ancilla: bool,
    /// Per sender outcome: probability that the middle qubits read `0..0`
    /// before the balancing unitary is applied.
    pub pre_balance_rates: Vec<(String, T)>,
}

/// Transfers `input` from W qubit 1 to W qubit N.
pub fn run_qst<T: Scalar>(w: &WSpec<T>, input: &StateVector<T>) -> Result<QstRun<T>> {
    if input.num_qubits() != 1 {
        return Err(Error::InvalidArgument(format!(
            "input must be a single qubit, got {}",
            input.num_qubits()
        )));
    }
    let input = input.renormalized()?;
    let (c1, cn) = (w.first(), w.last());
    compute_t(c1, cn)?;
    let claimed = T::lit(2.0) * c1.norm_sqr().min(cn.norm_sqr());

    let ancilla = w.num_qubits() == 2;
    let register = if ancilla {
        WSpec::new(vec![c1, czero(), cn])?
    } else {
        w.clone()
    };
    let n = register.num_qubits();
    let balancer = build_balancer(&register)?;

    let phi = input
        .tensor(&register.to_state()?)?
        .apply_cnot(1, 2)?
        .apply_1q_gate(&gates::hadamard(), 1)?;

    // remaining register after measuring qubits 1 and 2: middle 1..=n-2, receiver n-1
    let middle: Vec<usize> = (1..=n - 2).collect();
    let zeros = "0".repeat(middle.len());
    let receiver = n - 1;

    let mut branches = Vec::new();
    let mut pre_balance_rates = Vec::new();
    for measured in phi.measure_subset(&[1, 2])? {
        let rest = measured
            .post_state
            .as_state()
            .expect("register keeps at least two qubits")
            .clone();
        let sign_bit = measured.outcome.as_bytes()[0] == b'1';
        let alice_bit = measured.outcome.as_bytes()[1] == b'1';

        pre_balance_rates.push((
            measured.outcome.clone(),
            measured.probability * rest.project_bra(&middle, &zeros)?.probability,
        ));

        let balanced =
            StateVector::from_amplitudes_unnormalized(balancer.matrix.mul_vec(rest.amplitudes())?)?
                .renormalized()?;
        let corrected =
            correct_receiver(&balanced, receiver, c1, cn, &balancer, sign_bit, alice_bit)?;

        let kept = corrected.project_bra(&middle, &zeros)?;
        let herald = measured.probability * kept.probability;
        let fidelity = match &kept.post_state {
            Some(bob) => bob.fidelity(&input)?,
            None => T::zero(),
        };
        branches.push(ProtocolBranch {
            outcome: measured.outcome.clone(),
            heralded: true,
            probability: herald,
            bob_state: kept.post_state,
            target: Some(Target::Input),
            bob_fidelity: fidelity,
        });
        branches.push(ProtocolBranch {
            outcome: measured.outcome,
            heralded: false,
            probability: measured.probability * (T::one() - kept.probability).max(T::zero()),
            bob_state: None,
            target: None,
            bob_fidelity: T::zero(),
        });
    }

    Ok(QstRun {
        report: ProtocolReport::from_branches(branches, Some(claimed)),
        balancer,
        ancilla,
        pre_balance_rates,
    })
}

/// Receiver corrections for sender outcome `(sign_bit, alice_bit)`.
///
/// Before balancing, the receiver's amplitudes in the herald sector are
/// `((-1)^s beta c_1, alpha c_N)` when the sender's W qubit read 0 and
/// `(alpha c_1, (-1)^s beta c_N)` when it read 1. The balancer multiplies one
/// of them by `t`. A bit flip (first case only) puts the alpha term on `|0>`,
/// after which a diagonal phase fixes the known ratio between the two terms.
/// None of this depends on `alpha` or `beta`.
fn correct_receiver<T: Scalar>(
    state: &StateVector<T>,
    receiver: usize,
    c1: Complex<T>,
    cn: Complex<T>,
    balancer: &BalancerSpec<T>,
    sign_bit: bool,
    alice_bit: bool,
) -> Result<StateVector<T>> {
    let (g0, g1) = match balancer.scaled {
        ScaledComponent::ReceiverGround => (balancer.t, cone()),
        ScaledComponent::ReceiverExcited => (cone(), balancer.t),
    };
    let sign = if sign_bit { -cone::<T>() } else { cone() };
    let (mut out, k_alpha, k_beta) = if alice_bit {
        (state.clone(), c1 * g0, sign * cn * g1)
    } else {
        (
            state.apply_1q_gate(&gates::pauli_x(), receiver)?,
            cn * g1,
            sign * c1 * g0,
        )
    };
    let tiny = T::tolerances().prune;
    if k_alpha.norm() > tiny && k_beta.norm() > tiny {
        out = out.apply_1q_gate(&gates::phase(k_alpha / k_beta), receiver)?;
    }
    Ok(out)
}

/// Transfer between arbitrary W qubits `sender` and `receiver` (1-based) by
/// relabeling: the sender becomes qubit 1, the receiver qubit N, and the
/// others keep their relative order in between.
pub fn run_qst_between<T: Scalar>(
    w: &WSpec<T>,
    input: &StateVector<T>,
    sender: usize,
    receiver: usize,
) -> Result<QstRun<T>> {
    w.check_qubit(sender)?;
    w.check_qubit(receiver)?;
    if sender == receiver {
        return Err(Error::Index(format!(
            "sender and receiver are both qubit {sender}"
        )));
    }
    let mut order = vec![sender];
    order.extend((1..=w.num_qubits()).filter(|&q| q != sender && q != receiver));
    order.push(receiver);
    run_qst(&w.permuted(&order)?, input)
}
