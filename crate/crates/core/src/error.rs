use thiserror::Error;

/// Position-tagged failure from the expression parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {position}: {message}")]
pub struct ParseError {
    /// Byte offset into the input text.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller combined incompatible objects or supplied invalid input.
    #[error("usage error: {0}")]
    Usage(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// A search loop ran out of budget before finding its answer.
    #[error("{what} > {bound}")]
    BoundExceeded { what: &'static str, bound: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
