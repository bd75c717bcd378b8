//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by parsing, generation, and internal contract checks.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed edge-list document; `line` is 1-based.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Malformed or invalid generator specification string.
    #[error("invalid graph spec: {0}")]
    Spec(String),

    /// A generated or loaded graph would exceed the configured vertex limit.
    #[error("graph on {n} vertices exceeds the configured maximum of {max}")]
    TooLarge { n: usize, max: usize },

    /// A range-query point does not have the declared dimension.
    #[error("point has {got} coordinates but the structure has dimension {expected}")]
    Dimension { expected: usize, got: usize },

    /// No ordering is stored for the requested cluster pair.
    #[error("no ordering for cluster pair ({0}, {1})")]
    UnknownPair(usize, usize),

    /// An internal precondition or structural claim was found to be false.
    #[error("contract violation: {0}")]
    Contract(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract<T>(message: impl Into<String>) -> Result<T> {
    Err(Error::Contract(message.into()))
}
