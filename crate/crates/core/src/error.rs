use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Why an adaptive integration gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceFailure {
    /// All `max_subdivisions` intervals were used before reaching tolerance.
    BudgetExhausted,
    /// An interval shrank below floating-point resolution.
    IntervalCollapse,
    /// The integrand produced a NaN or infinity.
    NonFinite,
    /// The accelerated tail series did not settle.
    SeriesStalled,
}

impl std::fmt::Display for ConvergenceFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ConvergenceFailure::BudgetExhausted => "subdivision budget exhausted",
            ConvergenceFailure::IntervalCollapse => "interval collapsed below machine resolution",
            ConvergenceFailure::NonFinite => "non-finite integrand value",
            ConvergenceFailure::SeriesStalled => "accelerated tail series did not settle",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("pole of the function at {location}")]
    Pole { location: Complex64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "Re(alpha) = {alpha_re} is outside the convergence strip ({lower}, {upper}) for m = {m}"
    )]
    Strip {
        m: u32,
        alpha_re: f64,
        lower: f64,
        upper: f64,
    },

    #[error(
        "Re(alpha) = {alpha_re} is outside the continuation region ({lower}, {upper}) \\ {{{excluded}}} for m = {m}"
    )]
    Region {
        m: u32,
        alpha_re: f64,
        lower: f64,
        upper: f64,
        excluded: f64,
    },

    #[error("no convergence after {subdivisions} subdivisions ({reason}); estimate {estimate}")]
    Convergence {
        reason: ConvergenceFailure,
        subdivisions: usize,
        estimate: Complex64,
    },

    #[error("sample too small: need at least {required} observations, got {actual}")]
    Size { required: usize, actual: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
