use thiserror::Error;

/// Failure classes. Each maps to one CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input violates a documented precondition or fails validation.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// The input is well formed but outside what is implemented.
    #[error("outside supported scope: {0}")]
    OutOfScope(String),
    /// An internal consistency check failed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Error {
        Error::Invalid(msg.into())
    }

    pub fn out_of_scope(msg: impl Into<String>) -> Error {
        Error::OutOfScope(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Error {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
