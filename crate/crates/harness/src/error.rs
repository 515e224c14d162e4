use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid parameter: {0}")]
    Invalid(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: malformed PGM: {reason}")]
    Pgm { path: PathBuf, reason: String },

    #[error(transparent)]
    Core(#[from] sparsity_core::Error),

    #[error("CSV output: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;

impl HarnessError {
    /// Process exit status for this error: 2 for bad input, 3 for a solver
    /// that ran out of iterations, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Invalid(_) | HarnessError::Pgm { .. } => 2,
            HarnessError::Io { .. } | HarnessError::Csv(_) => 1,
            HarnessError::Core(sparsity_core::Error::InvalidParameter(_)) => 2,
            HarnessError::Core(sparsity_core::Error::NotConverged { .. }) => 3,
            HarnessError::Core(_) => 1,
        }
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> HarnessError {
    HarnessError::Invalid(msg.into())
}

pub(crate) fn io_error(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> HarnessError {
    let path = path.into();
    move |source| HarnessError::Io { path, source }
}
