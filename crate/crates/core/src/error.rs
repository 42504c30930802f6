use thiserror::Error;

use crate::controllability::Verdict;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A matrix or vector has the wrong shape for the operation.
    #[error("{field}: {message} (expected {expected}, got {actual})")]
    Dimension {
        field: String,
        message: String,
        expected: String,
        actual: String,
    },

    #[error("{field} contains a non-finite entry at ({row}, {col})")]
    NonFinite { field: String, row: usize, col: usize },

    /// An iterative decomposition did not converge.
    #[error("numeric failure: {0}")]
    NumericFailure(String),

    /// A scalar argument is outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid tolerance: {0}")]
    Tolerance(String),

    /// The right-hand side has a component outside the image of the Gramian.
    #[error("target unreachable: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    TargetUnreachable { residual: f64, tolerance: f64 },

    /// Synthesis refused because the system failed the output test.
    #[error("system is not output controllable ({})", .0.summary())]
    NotOutputControllable(Box<Verdict>),

    #[error("parallel connection requires common input width: system {index} has m = {found}, expected {expected}")]
    InputWidthMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("random generation failed: {0}")]
    Generation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn dimension(
        field: impl Into<String>,
        message: impl Into<String>,
        expected: impl std::fmt::Display,
        actual: impl std::fmt::Display,
    ) -> Self {
        Error::Dimension {
            field: field.into(),
            message: message.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}
