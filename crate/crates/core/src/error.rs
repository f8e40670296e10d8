use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator {index} is not a bijection on 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },

    #[error("group closure exceeds the order cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("element {0} does not lie in the subgroup")]
    NotInSubgroup(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("{q} is not a power of {p}")]
    NotAPrimePower { q: u64, p: u32 },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: u32, bound: u32 },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("coefficient {0} is not p-integral")]
    NotIntegral(String),

    #[error("action does not close within {0} elements")]
    ActionDoesNotClose(usize),

    #[error("truncation degree {degree} is too small: {reason}")]
    Truncation { degree: u32, reason: String },

    #[error("assertion failed: {0}")]
    Assertion(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
