use thiserror::Error;

/// Errors raised anywhere in the group / character / diagram pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("group order cap {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("distinct elements {0} and {1} are closer than the separation bound")]
    Separation(usize, usize),

    #[error("closure check failed: {0}")]
    Closure(String),

    #[error("wrong ambient group: {0}")]
    Ambient(String),

    #[error("integer snapping failed for {what}: {value} is not within {tol} of an integer")]
    Snap { what: String, value: f64, tol: f64 },

    #[error("eigen decomposition failed: {0}")]
    Eigen(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the numeric path (snapping, eigen extraction, separation).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Snap { .. } | Error::Eigen(_) | Error::Separation(..) | Error::Invariant(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Round `value` to the nearest integer if it is within `tol`.
pub(crate) fn snap(value: f64, tol: f64, what: impl FnOnce() -> String) -> Result<i64> {
    let r = value.round();
    if (value - r).abs() < tol && r.is_finite() {
        Ok(r as i64)
    } else {
        Err(Error::Snap { what: what(), value, tol })
    }
}
