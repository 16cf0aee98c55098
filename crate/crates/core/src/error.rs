use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The evaluator carries fewer decimal digits than the argument needs.
    #[error("evaluation at y = {y} needs {required} digits, evaluator carries {available}")]
    PrecisionInsufficient {
        y: f64,
        required: u32,
        available: u32,
    },

    /// The series stopping rule did not fire within the term budget.
    #[error("series did not converge at y = {y} within {max_terms} terms")]
    NonConvergence { y: f64, max_terms: usize },

    /// A coefficient index beyond what the exact representation supports.
    #[error("coefficient index {index} exceeds the supported limit {limit}")]
    CapacityExceeded { index: u64, limit: u64 },

    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// No sign change was found where one was expected.
    #[error("no sign change bracketing {what} in [{lo}, {hi}]")]
    BracketNotFound { what: String, lo: f64, hi: f64 },

    /// The adaptive integrator could not make progress.
    #[error("integration failed at y = {y}: step size {step:e} underflowed")]
    IntegrationFailure { y: f64, step: f64 },

    /// A gauge triple whose members are not mutually consistent.
    #[error("inconsistent gauge function `{name}`: {detail}")]
    InconsistentGauge { name: String, detail: String },

    /// Two grids that should share abscissae do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
