use thiserror::Error;

/// Errors raised by graph construction, parsing and the numeric kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its documented bound.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// Malformed graph expression or edge-list text; `offset` is a byte offset.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    /// The eigensolver failed or produced a decomposition with a large residual.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// The expression is outside the catalog the closed-form predictor knows.
    #[error("unsupported family: {0}")]
    Unsupported(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
