use thiserror::Error;

/// Errors raised by the numerical kernels and model constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside the domain of {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("{what} overflows f64 (log magnitude {log_value:.3})")]
    Overflow { what: &'static str, log_value: f64 },

    #[error("pole in {what}: {detail}")]
    Pole { what: &'static str, detail: String },

    #[error("energy {energy} is below the potential minimum {minimum}")]
    BelowMinimumEnergy { energy: f64, minimum: f64 },

    #[error("phase-space point is off the energy shell (mismatch {mismatch:e})")]
    OffShell { mismatch: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        what,
        detail: detail.into(),
    }
}
