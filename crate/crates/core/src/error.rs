use core::fmt;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    Domain { function: &'static str, value: f64 },
    /// The unscaled result does not fit in an `f64`; request the scaled form.
    Overflow { function: &'static str, x: f64 },
    /// The model variant has no implementation for the requested quantity.
    UnsupportedModel { reason: &'static str },
    /// A conjectured O(n) erasure entropy needs an explicit volume quantum.
    MissingRegulator,
    /// An iterative solver exceeded its iteration cap.
    NoConvergence { solver: &'static str, iterations: usize },
    /// A Monte Carlo configuration failed validation.
    InvalidConfig { field: &'static str, reason: &'static str },
    /// Thermodynamic integration needs at least three grid points.
    InsufficientGrid { points: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { function, value } => {
                write!(f, "{function}: argument {value} is outside the domain")
            }
            Error::Overflow { function, x } => {
                write!(f, "{function}: result overflows at x = {x}; use the scaled form")
            }
            Error::UnsupportedModel { reason } => write!(f, "unsupported model: {reason}"),
            Error::MissingRegulator => {
                write!(f, "classical O(n) erasure entropy requires a volume quantum (delta)")
            }
            Error::NoConvergence { solver, iterations } => {
                write!(f, "{solver} did not converge within {iterations} iterations")
            }
            Error::InvalidConfig { field, reason } => write!(f, "invalid {field}: {reason}"),
            Error::InsufficientGrid { points } => {
                write!(f, "integration grid has {points} points, at least 3 are required")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
