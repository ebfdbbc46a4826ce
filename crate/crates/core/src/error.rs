use thiserror::Error;

/// Errors raised by the library. Resource caps are always reported, never
/// silently truncated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),

    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(String, String),

    #[error("cap exceeded: {what} (limit {limit})")]
    Cap { what: String, limit: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn cap(what: impl Into<String>, limit: usize) -> Self {
        Error::Cap {
            what: what.into(),
            limit,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Cap { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
