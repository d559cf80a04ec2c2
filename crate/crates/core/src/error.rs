use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A gamma-function pole was hit.
    #[error("pole of the gamma function at {0}")]
    Pole(String),

    /// A magnitude guard tripped before the computation could overflow.
    #[error("range error: {0}")]
    Range(String),

    /// A series or quadrature failed to reach its tolerance.
    #[error("no convergence after {iterations} steps ({what}); best estimate {estimate}")]
    NotConverged {
        what: &'static str,
        iterations: usize,
        estimate: String,
    },

    /// Neumann-series terms keep growing.
    #[error("divergent series: {0}")]
    Divergence(String),

    /// The integrand returned NaN or infinity.
    #[error("integrand not finite at x = {0}")]
    Integrand(f64),

    /// The request is well posed but no formula for it is implemented.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
