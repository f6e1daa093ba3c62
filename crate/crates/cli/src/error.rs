use std::io;
use std::path::Path;

use thiserror::Error;

/// Failure of a command, carrying the process exit status it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("numerical check failed: {0}")]
    Numerical(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn io(context: impl Into<String>, source: io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    pub fn io_at(action: &str, path: &Path, source: io::Error) -> Self {
        CliError::io(format!("cannot {action} {}", path.display()), source)
    }
}

impl From<mirrorfield::Error> for CliError {
    fn from(e: mirrorfield::Error) -> Self {
        use mirrorfield::Error as E;
        match e {
            E::GridTooCoarse { .. }
            | E::QuadratureNotConverged { .. }
            | E::InvariantViolated { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
