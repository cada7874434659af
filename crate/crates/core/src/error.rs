//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller handed in data that violates an argument contract.
    #[error("input error: {0}")]
    Input(String),

    /// An operation that requires an associative table was given a magma.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An internal cross-check that should be unconditionally true failed.
    /// Seeing this means a bug or a genuinely surprising mathematical finding.
    #[error("invariant failure: {0}")]
    Invariant(String),

    /// The request is well-formed but exceeds a hard size limit.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// Text input (a table file, an equation, a proof script) failed to parse.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// A precondition established by an earlier phase does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
