use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum XalgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
}
