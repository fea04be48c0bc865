use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("partition {0} is not triangular")]
    NonTriangular(Partition),
    #[error("n = {n} is too small (need n >= {min})")]
    NTooSmall { n: usize, min: usize },
    #[error("rational function {0} is not a polynomial")]
    NonPolynomial(String),
    #[error("coefficient {0} is not symmetric in q and t")]
    NotSymmetric(String),
    #[error("cannot substitute zero into a negative exponent")]
    ZeroSubstitution,
    #[error("substitution leaves non-integral coefficients")]
    NonIntegral,
    #[error("{inner} is not contained in {outer}")]
    NotContained { inner: Partition, outer: Partition },
    #[error("size {size} exceeds the configured bound {bound}")]
    SizeBound { size: usize, bound: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no stabilization for {tau} up to n = {cap}")]
    NoStabilization { tau: Partition, cap: usize },
    #[error("singular linear system")]
    Singular,
    #[error("expression is inexact: {0}")]
    Inexact(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
