use thiserror::Error;

/// Errors raised by the evolution, inference and driver routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvoError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("bit value {0} is not 0 or 1")]
    InvalidBit(u8),

    #[error("population is empty")]
    EmptyPopulation,

    #[error("non-finite value {value} in {what}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("mutation rate {0} outside (0, 1]")]
    InvalidMutationRate(f64),

    #[error("site index {index} out of range for dimension {dim}")]
    InvalidSite { index: usize, dim: usize },

    #[error("site index {0} listed twice")]
    DuplicateSite(usize),

    #[error("prior requires lambda > 0 and sigma > 0 (got lambda={lambda}, sigma={sigma})")]
    InvalidPrior { lambda: f64, sigma: f64 },

    #[error("selection exhausted its budget of {0} attempts")]
    AttemptBudgetExceeded(usize),

    #[error("precision matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("exhaustive computation too large: {0}")]
    TooLarge(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, EvoError>;
