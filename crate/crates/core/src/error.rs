use thiserror::Error;

/// Every failure mode of the library. Variants map one-to-one onto the
/// error classes the CLI and the C ABI report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("jet order mismatch: {lhs} vs {rhs}")]
    OrderMismatch { lhs: usize, rhs: usize },

    #[error("series truncation mismatch: {lhs} vs {rhs}")]
    TruncationMismatch { lhs: usize, rhs: usize },

    #[error("jet is not invertible (zero head coefficient)")]
    NotInvertible,

    #[error("pole: {0}")]
    Pole(String),

    #[error("divergence: {0}")]
    Divergence(String),

    #[error("out of region: {0}")]
    OutOfRegion(String),

    #[error("no solution in region: {0}")]
    NoSolution(String),

    #[error("inconsistent system: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
