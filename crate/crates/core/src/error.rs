use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system type `{0}`")]
    UnsupportedType(String),
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("weight {weight:?} is not {p}-regular")]
    NotRegular { weight: Vec<i64>, p: u64 },
    #[error("periodic polynomial did not stabilize by depth {depth}")]
    StabilizationFailed { depth: usize },
    #[error("support window too small: {0}")]
    WindowTooSmall(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("prediction mismatch: {0}")]
    PredictionMismatch(String),
    #[error("dimension mismatch: table gives {lhs}, expected {rhs}")]
    DimensionMismatch { lhs: u128, rhs: u128 },
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("module is not a highest weight module: {0}")]
    NotHighestWeight(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
