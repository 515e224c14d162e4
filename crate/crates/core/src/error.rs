use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested computation is outside what this implementation supports
    /// (exhaustive enumeration too large, unsupported norm exponent, ...).
    #[error("capability exceeded: {0}")]
    Capability(String),

    #[error("reference signal is zero; relative metrics are undefined")]
    UndefinedReference,

    /// Input violates the structural assumptions of the model (e.g. a group
    /// structure that is not loopless).
    #[error("model violation: {0}")]
    ModelViolation(String),

    /// Iteration cap reached before the convergence criterion. Carries the
    /// best iterate found so far.
    #[error("no convergence after {iterations} iterations (gap {gap:e})")]
    NotConverged {
        iterations: usize,
        gap: f64,
        best: Vec<f64>,
    },

    #[error("iterates diverged at iteration {iteration} (objective {objective:e})")]
    Diverged { iteration: usize, objective: f64 },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
