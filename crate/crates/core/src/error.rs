use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("generator index {index} out of range 1..={max} for {n} strands")]
    IndexOutOfRange { index: i64, n: usize, max: usize },

    #[error("unsupported strand count {n}: {reason}")]
    BadStrandCount { n: usize, reason: &'static str },

    #[error("strand count mismatch: {left} vs {right}")]
    StrandCountMismatch { left: usize, right: usize },

    #[error("exponent sum is {0}, expected 0 (word is not in the commutator subgroup)")]
    NonZeroExponentSum(i64),

    #[error("invalid parameters n={n}, k={k}: {reason}")]
    BadParams { n: usize, k: i64, reason: String },

    #[error("invalid target index {target} for {n} strands (expected 2..={max})")]
    BadTarget { target: i64, n: usize, max: usize },

    #[error("degenerate core pair ({0}, {0})")]
    BadIndices(i64),

    #[error("no index commutes with both {i} and {j} for n={n}")]
    NoCommutingIndex { n: usize, i: i64, j: i64 },

    #[error("flat length {len} exceeds limit {max}")]
    TooLong { len: u128, max: u128 },

    #[error("word of length {len} exceeds the Lawrence-Krammer bound {max}")]
    WordTooLong { len: usize, max: usize },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl BraidError {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        BraidError::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, BraidError>;
