use std::io;
use std::path::PathBuf;

use centdian_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: edge ({u}, {v}) has negative length {w}")]
    NegativeWeight { line: usize, u: usize, v: usize, w: f64 },
    #[error("instance graph is disconnected: vertex {vertex} is unreachable from vertex 0")]
    DisconnectedGraph { vertex: usize },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("{flag}: {message}")]
    Usage { flag: &'static str, message: String },
    #[error("{flag}: {source}")]
    Flag {
        flag: &'static str,
        #[source]
        source: CoreError,
    },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn usage(flag: &'static str, message: impl Into<String>) -> Self {
        CliError::Usage { flag, message: message.into() }
    }

    /// Attaches the flag that supplied the offending value.
    pub fn flag(flag: &'static str) -> impl FnOnce(CoreError) -> CliError {
        move |source| CliError::Flag { flag, source }
    }

    /// 3 for resource or numerical limits, 2 for every validation error.
    pub fn exit_code(&self) -> i32 {
        let core = match self {
            CliError::Flag { source, .. } | CliError::Core(source) => Some(source),
            _ => None,
        };
        match core {
            Some(CoreError::InstanceTooLarge { .. } | CoreError::NumericalFailure(_)) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
