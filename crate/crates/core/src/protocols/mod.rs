//! Branch-exact simulation of state transfer and state preparation over a
//! shared W register.
//!
//! Every measurement outcome is enumerated with its exact probability; nothing
//! is sampled unless [`sample_report`] is called explicitly.

mod balancer;
mod prepare;
mod qst;
mod sampling;

pub use balancer::{
    build_balancer, compute_t, BalancerSpec, Repair, ScaledComponent, SparseMatrix,
};
pub use prepare::{
    expand_pair, expand_w, prepare_two_qubit, prepare_w, rotated_basis, PreparationReport,
    RotatedBasis, RotatedExpansion, WExpansion,
};
pub use qst::{run_qst, run_qst_between, QstRun};
pub use sampling::{sample_report, SampleTally};

use crate::state::StateVector;

/// What the receiver's qubit is compared against on a heralded branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// The sender's unknown input state.
    Input,
    /// The known state `alpha|0> + beta|1>` of a rotated basis.
    Phi,
    /// Its orthogonal partner `beta|0> - alpha|1>`.
    Psi,
}

/// One leaf of the outcome tree.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolBranch<T> {
    /// Measurement record that identifies the branch.
    pub outcome: String,
    /// Whether the herald (middle qubits all `0`) fired.
    pub heralded: bool,
    /// Absolute probability of this leaf.
    pub probability: T,
    /// Receiver state on heralded branches.
    pub bob_state: Option<StateVector<T>>,
    pub target: Option<Target>,
    /// Fidelity of `bob_state` with the target; 0 on unheralded branches.
    pub bob_fidelity: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolReport<T> {
    pub branches: Vec<ProtocolBranch<T>>,
    /// Total probability of branches whose receiver state matches the target.
    pub success_probability: T,
    /// Closed-form expectation for the success probability, when one applies.
    pub claimed_probability: Option<T>,
}

impl<T: crate::Scalar> ProtocolReport<T> {
    pub fn total_probability(&self) -> T {
        self.branches
            .iter()
            .fold(T::zero(), |acc, b| acc + b.probability)
    }

    fn from_branches(branches: Vec<ProtocolBranch<T>>, claimed: Option<T>) -> Self {
        let cut = T::one() - T::tolerances().fidelity;
        let success_probability = branches
            .iter()
            .filter(|b| b.heralded && b.bob_fidelity > cut)
            .fold(T::zero(), |acc, b| acc + b.probability);
        Self {
            branches,
            success_probability,
            claimed_probability: claimed,
        }
    }
}
