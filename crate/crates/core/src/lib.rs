//! State-vector simulation of N-qubit W states.
//!
//! * [`WSpec`] holds the coefficients `c_1..c_N` of
//!   `c_1|10..0> + c_2|010..0> + ... + c_N|0..01>`; qubit 1 is the most
//!   significant bit of a basis index.
//! * [`entanglement`] computes pairwise concurrence in closed form and through
//!   the spin-flip eigenvalue procedure, plus total and mirror sums.
//! * [`protocols`] enumerates every measurement branch of state transfer and
//!   remote preparation over a W register.
//! * [`optics`] designs the beam-splitter chain that produces a W state from a
//!   single photon.
//!
//! Everything numeric is generic over [`Scalar`] (`f64` or `f32`); the
//! `*64` aliases below fix the working precision.

pub mod density;
pub mod eigen;
pub mod entanglement;
mod error;
pub mod matrix;
pub mod optics;
pub mod protocols;
mod scalar;
pub mod state;
mod wspec;

pub use density::{partial_trace, partial_trace_pure, DensityMatrix, Traceable};
pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use num_complex::Complex;
pub use optics::{BeamSplitterChain, CavityRegister, ModeState};
pub use protocols::{ProtocolBranch, ProtocolReport, Target};
pub use scalar::{Scalar, Tolerances};
pub use state::{
    basis_index, basis_label, gates, max_qubits, set_max_qubits, BranchState, Gate2,
    MeasurementBranch, Projection, StateVector,
};
pub use wspec::WSpec;

pub type C64 = Complex<f64>;
pub type C32 = Complex<f32>;

pub type StateVectorF64 = StateVector<f64>;
pub type DensityMatrixF64 = DensityMatrix<f64>;
pub type CMatrixF64 = CMatrix<f64>;
pub type WSpecF64 = WSpec<f64>;
pub type ProtocolReportF64 = ProtocolReport<f64>;
pub type BeamSplitterChainF64 = BeamSplitterChain<f64>;
pub type ModeStateF64 = ModeState<f64>;

pub type StateVectorF32 = StateVector<f32>;
pub type WSpecF32 = WSpec<f32>;
pub type DensityMatrixF32 = DensityMatrix<f32>;
