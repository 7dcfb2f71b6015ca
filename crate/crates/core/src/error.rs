use thiserror::Error;

/// Errors raised by the library.
///
/// The variants are grouped the way callers need to react to them: bad
/// shapes and bad inputs are the caller's fault, capability errors mean a
/// configured search cap or size limit was hit, and `Internal` signals that
/// an exact certificate disagreed with the construction that produced it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("rank deficient: {0}")]
    Rank(String),
    #[error("inadmissible seed: {0}")]
    Seed(String),
    #[error("invalid path: {0}")]
    Path(String),
    #[error("capability limit reached: {0}")]
    Capability(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn cap(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
