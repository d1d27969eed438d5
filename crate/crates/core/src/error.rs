use thiserror::Error;

/// Errors produced by the computations in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be weakly decreasing")]
    InvalidPartition(Vec<usize>),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two independent computations disagreed. Always an implementation bug.
    #[error("verification mismatch: {0}")]
    Mismatch(String),

    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
