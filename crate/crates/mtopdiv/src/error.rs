//! Error type shared across the crate.

/// Errors reported by the library.
///
/// `InvalidInput` covers violated preconditions (shape mismatches,
/// non-finite coordinates, out-of-range parameters). `Internal` marks a
/// broken invariant inside an algorithm; seeing one is always a bug.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
