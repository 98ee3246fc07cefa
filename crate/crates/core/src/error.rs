use thiserror::Error;

/// Errors raised by the simulation core.
///
/// Numeric payloads are stored as `f64` regardless of the working precision so
/// the error type stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid register: {0}")]
    InvalidRegister(String),

    #[error("register of {requested} qubits exceeds the configured cap of {cap}")]
    RegisterTooLarge { requested: usize, cap: usize },

    #[error("qubit index error: {0}")]
    Index(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (squared norm {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("gate is not unitary: max |G^dag G - I| = {defect:e}")]
    NotUnitary { defect: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "eigenvalue iteration did not converge after {iterations} sweeps (residual {residual:e})"
    )]
    Convergence { iterations: usize, residual: f64 },

    #[error("protocol undefined: {0}")]
    DegenerateProtocol(String),

    #[error("balancing unitary could not be completed: {0}")]
    Construction(String),

    #[error("infeasible beam-splitter target: {0}")]
    InfeasibleTarget(String),

    #[error("mode state is not in the single-photon sector: {0}")]
    MultiExcitation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
