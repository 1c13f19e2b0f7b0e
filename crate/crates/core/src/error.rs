use thiserror::Error;

use crate::coeff::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} and {1}")]
    FieldMismatch(Field, Field),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("zero element: {0}")]
    ZeroElement(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integrity check failed: {0}")]
    Integrity(String),
    #[error("cap exhausted: {0}")]
    CapExhausted(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Process exit code used by the command line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Integrity(_) => 4,
            Error::CapExhausted(_) => 5,
            _ => 3,
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
