use std::time::Duration;

/// Errors raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidType(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i32>),
    #[error("simple index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u128, cap: usize },
    #[error("pair is not comparable: {0}")]
    NotComparable(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("Groebner computation exceeded {0:?}")]
    Timeout(Duration),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is not traceless")]
    NotTraceless,
}

pub type Result<T> = std::result::Result<T, Error>;
