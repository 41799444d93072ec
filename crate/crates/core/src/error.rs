use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("elements belong to different algebras (dim {left} vs dim {right})")]
    AlgebraMismatch { left: usize, right: usize },

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("element has coefficients depending on z")]
    NotConstantInZ,

    #[error("BCH truncation exceeded: need words of length {needed}, table holds {available}")]
    TruncationExceeded { needed: usize, available: usize },

    #[error("Lie algebra is not nilpotent")]
    NotNilpotent,

    #[error("invalid Lie algebra homomorphism: {0}")]
    InvalidHom(String),

    #[error("algebra is not of Heisenberg shape (basis P, Q, E with [P,Q] = E central)")]
    NotHeisenberg,

    #[error("Weyl elements carry different central values")]
    CentralValueMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid algebra file: {0}")]
    AlgebraFile(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
