use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("group element has {found} components, group has {expected} factors")]
    ComponentMismatch { expected: usize, found: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("hypercube is not Latin: {0}")]
    NotLatin(String),

    #[error("not a diagonal: {0}")]
    NotADiagonal(String),

    #[error("not a transversal: {0}")]
    NotATransversal(String),

    #[error("diagonal is not suitable: {0}")]
    NotSuitable(String),

    #[error("construction failed validation: {0}")]
    Validation(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
