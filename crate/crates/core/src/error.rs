//! Error type shared by the library.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FeecError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),
    #[error("invalid form degree: {0}")]
    InvalidDegree(String),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("degenerate cell map")]
    DegenerateMap,
    #[error("prism map is sheared or not a product map")]
    ShearedPrism,
    #[error("basis is linearly dependent (rank {rank} < {len})")]
    Dependent { rank: usize, len: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("point {0} lies outside the reference cell")]
    OutsideCell(String),
}

pub type Result<T> = std::result::Result<T, FeecError>;
