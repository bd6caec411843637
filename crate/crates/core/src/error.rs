use thiserror::Error;

/// Errors surfaced by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range arguments.
    #[error("argument error: {0}")]
    Argument(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Degenerate geometric input (singular systems, zero denominators).
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// A configured size cap would be exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// A search node budget ran out before an answer was established.
    #[error("budget exhausted: {0}")]
    Budget(String),
    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
