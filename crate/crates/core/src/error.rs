use thiserror::Error;

/// Errors shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Inputs outside the mathematical domain of the requested quantity.
    #[error("domain error: {0}")]
    Domain(String),

    /// The quadrature refinement budget ran out before the error estimate met the tolerance.
    #[error("quadrature did not converge on [{lo}, {hi}] after {levels} levels (last error estimate {estimate:e}, tolerance {tol:e})")]
    Quadrature {
        lo: f64,
        hi: f64,
        levels: usize,
        estimate: f64,
        tol: f64,
    },

    /// Malformed or out-of-range sampled data.
    #[error("data error: {0}")]
    Data(String),

    /// A computation produced a non-finite value or violated a post-condition.
    #[error("numeric error: {0}")]
    Numeric(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
