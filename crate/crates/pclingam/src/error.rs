//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a precondition (bad index, size mismatch, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Orientation rules demanded both directions for the same edge, or the
    /// closed graph contains a directed cycle.
    #[error("inconsistent orientation on edge ({a}, {b})")]
    InconsistentOrientation { a: usize, b: usize },

    /// DAG enumeration exceeded the configured class-size cap.
    #[error("equivalence class holds more than {cap} DAGs")]
    ClassTooLarge { cap: usize },

    /// The two models are not distribution-equivalent.
    #[error("models are not distribution-equivalent")]
    NotEquivalent,

    /// Data is degenerate for the requested computation (singular covariance,
    /// constant sample, zero-variance residual, rank-deficient regressors).
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    /// Too few samples for the requested computation.
    #[error("insufficient data: need at least {needed} samples, got {got}")]
    InsufficientData { needed: usize, got: usize },

    /// An input failed a documented contract (e.g. residuals not standardized).
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// Malformed input file (CSV or JSON).
    #[error("input error: {0}")]
    Input(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
