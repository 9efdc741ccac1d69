use thiserror::Error;

/// Errors raised by graph construction, parsing and the counting routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("{what} is {got}, above the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        got: u128,
        limit: u128,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn argument(message: impl Into<String>) -> Self {
        Error::Argument(message.into())
    }

    pub(crate) fn size(what: &'static str, got: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::SizeLimit {
            what,
            got: got.into(),
            limit: limit.into(),
        }
    }
}
