use std::path::PathBuf;

use thiserror::Error;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFICATION_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const IO: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Verification(String),

    #[error("cannot {action} {}: {source}", path.display())]
    Io {
        action: &'static str,
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] qcr_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use qcr_core::Error as E;
        match self {
            Self::Usage(_) => exit::USAGE,
            Self::Verification(_) => exit::VERIFICATION_FAILED,
            Self::Io { .. } => exit::IO,
            // numerical failures mean a result could not be certified
            Self::Core(E::PathMismatch { .. } | E::NoConvergence { .. }) => {
                exit::VERIFICATION_FAILED
            }
            Self::Core(_) => exit::USAGE,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
