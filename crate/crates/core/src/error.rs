use thiserror::Error;

/// Errors raised by the algebra, the constructors and the file formats.
///
/// Matrix positions inside errors are reported 1-based, since they are meant
/// for people reading input files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("inexact division: {dividend} is not a multiple of {divisor}")]
    InexactDivision { dividend: String, divisor: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not upper unitriangular: bad entry at ({row}, {col})")]
    NotUnitriangular { row: usize, col: usize },

    #[error("index {index} out of range for size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("B violates B = A - q(-1)^n A* at ({row}, {col}): expected {expected}, found {found}")]
    Inconsistent {
        row: usize,
        col: usize,
        expected: String,
        found: String,
    },

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
