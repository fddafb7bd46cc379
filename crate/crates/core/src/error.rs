use thiserror::Error;

/// Errors shared by the linear-algebra, subspace and construction layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix must be square, found {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation is only available over the rationals")]
    RationalOnly,

    #[error("invalid prime modulus {0}: {1}")]
    InvalidPrime(u64, &'static str),

    #[error("ambient size {n} exceeds the guard {max}; raise the guard explicitly")]
    GuardExceeded { n: usize, max: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn mismatch(expected: impl ToString, found: impl ToString) -> Error {
    Error::DimensionMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
