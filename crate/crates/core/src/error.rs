//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A configuration value is missing, malformed, or inconsistent.
    /// The message names the offending field.
    #[error("configuration error: {0}")]
    Config(String),

    /// An argument is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Not enough observations to evaluate an estimator.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// All online surrogate values are identical, so the regression
    /// slope is undefined.
    #[error("degenerate regressor: online surrogate values have zero variance")]
    DegenerateRegressor,

    /// An interaction contract was violated (e.g. a policy that needs
    /// surrogate observations was fed none).
    #[error("protocol error: {0}")]
    Protocol(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv output error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json output error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
