use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },
    #[error("mismatched Cartan data: rank {left} vs rank {right}")]
    MismatchedDatum { left: usize, right: usize },
    #[error("regularity violated at {element}: color {color} string ended after {steps} of {needed} steps")]
    Regularity {
        element: String,
        color: usize,
        steps: usize,
        needed: usize,
    },
    #[error("no Weyl word found within length {cap}")]
    WordNotFound { cap: usize },
    #[error("invalid element encoding {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
