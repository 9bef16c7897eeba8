use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at x = {0}")]
    Pole(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what}: series did not converge within {terms} terms")]
    Convergence { what: &'static str, terms: usize },

    #[error(
        "{what}: cancellation leaves an error estimate of {estimate:e} against a sum of {sum:e}"
    )]
    PrecisionLoss {
        what: &'static str,
        estimate: f64,
        sum: f64,
    },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("insufficient grid: {0}")]
    InsufficientGrid(String),

    #[error("{0} is out of range")]
    Range(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
