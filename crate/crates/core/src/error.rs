use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("generation failed: {0}")]
    GenerationFailure(String),

    #[error("eigensolver failed to converge (best residual {residual:e})")]
    SolverFailure { residual: f64 },

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("property violation: {0}")]
    PropertyViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
