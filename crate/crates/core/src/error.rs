use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("unknown object id {0}")]
    UnknownObject(usize),

    #[error("unknown morphism id {0}")]
    UnknownMorphism(usize),

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("size limit exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("axiom violated: {0}")]
    Violation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
