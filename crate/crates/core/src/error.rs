use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An index or parameter outside the valid range of its object.
    #[error("invalid input: {0}")]
    Input(String),

    /// An exhaustive routine was asked to run past its configured bound.
    #[error("{what}: size {size} exceeds the enumeration bound {bound}")]
    Capacity { what: &'static str, size: usize, bound: usize },

    /// The operation's structural precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Malformed instance file.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An internal invariant broke. Always a bug.
    #[error("integrity error: {0}")]
    Integrity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
