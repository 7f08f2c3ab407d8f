//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("only two objectives supported here, got {0}")]
    UnsupportedDimension(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("value out of range: {0}")]
    Range(String),

    #[error("point ({0}, {1}) violates the reference point")]
    ReferenceViolation(f64, f64),

    #[error("matrix not positive definite after maximum jitter escalation")]
    Factorization,

    #[error("GP training failed: {0}")]
    Training(String),

    #[error("acquisition maximization failed: {0}")]
    Acquisition(String),

    #[error("objective evaluation failed: {0}")]
    Evaluation(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
