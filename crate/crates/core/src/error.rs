use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("no base station in tier {0}")]
    NoBaseStation(&'static str),

    #[error("no coverage: deployment contains no base station")]
    NoCoverage,

    /// `lambda* xi == 1`: the equal-RSS boundary is a straight line, not a circle.
    #[error("degenerate ERB: lambda*xi = {lambda_xi} (boundary is a line)")]
    DegenerateBoundary { lambda_xi: f64 },

    #[error("formula outside its validity range: {0}")]
    OutOfValidity(String),

    #[error("no data: {0}")]
    NoData(&'static str),

    #[error("quadrature did not converge: {what} (estimate {estimate:e}, error {error:e})")]
    Quadrature {
        what: &'static str,
        estimate: f64,
        error: f64,
    },

    #[error("config {path}: {message}")]
    ConfigParse { path: PathBuf, message: String },

    #[error("invalid config:\n  - {}", .0.join("\n  - "))]
    ConfigInvalid(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

/// Fails with [`Error::InvalidParameter`] unless `value` is finite and `> 0`.
pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be finite and > 0, got {value}")))
    }
}

pub(crate) fn ensure_non_negative(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be finite and >= 0, got {value}")))
    }
}
