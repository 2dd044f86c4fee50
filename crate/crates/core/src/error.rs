use thiserror::Error;

/// Errors raised by every layer of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("field modes differ: {0} and {1}")]
    ModeMismatch(String, String),
    #[error("pole at q = {at}: the factor {factor} vanishes")]
    Pole { at: String, factor: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("window too small: {0}")]
    Window(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
