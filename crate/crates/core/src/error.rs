use thiserror::Error;

use crate::finder::Embedding;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("relation is not a partial order: {0}")]
    NotAPoset(String),

    #[error("{what} = {value} exceeds the cap of {max}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown builtin pattern `{0}`")]
    UnknownPattern(String),

    #[error("host contains a copy of the pattern: {0}")]
    ContainsPattern(Embedding),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn cap(what: &'static str, value: usize, max: usize) -> Result<()> {
    if value > max {
        Err(Error::CapExceeded { what, value, max })
    } else {
        Ok(())
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
