use std::process::ExitCode;

use wsim_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("cannot read {0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 2 for bad input, 3 for a model with no solution, 1 for anything else.
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(..) => 2,
            CliError::Core(e) => match e {
                Error::InfeasibleTarget(_) | Error::DegenerateProtocol(_) => 3,
                Error::Index(_)
                | Error::InvalidArgument(_)
                | Error::NotNormalized { .. }
                | Error::InvalidRegister(_)
                | Error::MultiExcitation(_) => 2,
                _ => 1,
            },
        })
    }
}
