use thiserror::Error;

use crate::quad::QuadratureResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// An index or parameter lies outside the supported range.
    #[error("range error in {func}: {detail}")]
    Range { func: &'static str, detail: String },

    /// The result is not representable as a finite f64.
    #[error("overflow in {func} at {detail}")]
    Overflow { func: &'static str, detail: String },

    #[error("precondition violated in {func}: {detail}")]
    Precondition { func: &'static str, detail: String },

    /// An iterative method failed to converge.
    #[error("{func} did not converge: {detail}")]
    NoConvergence { func: &'static str, detail: String },

    /// The quadrature stopped before reaching the requested tolerance.
    /// Carries the best available result.
    #[error(
        "tolerance not met: value {} with error estimate {:e}",
        .0.value,
        .0.abs_err_estimate
    )]
    ToleranceNotMet(Box<QuadratureResult>),

    /// A consistency identity that must hold exactly was violated.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }

    pub(crate) fn range(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Range {
            func,
            detail: detail.into(),
        }
    }

    pub(crate) fn precondition(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            func,
            detail: detail.into(),
        }
    }
}

/// Rejects non-positive and non-finite arguments.
pub(crate) fn require_positive(func: &'static str, name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(
            func,
            format!("{name} must be finite and > 0, got {value}"),
        ))
    }
}
