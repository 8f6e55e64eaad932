//! Error type shared by all operations in this crate.

use crate::Complex;
use alloc::string::String;

/// Errors produced by special-function evaluation, series manipulation,
/// solution construction, and numerical integration.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A gamma-function argument landed on (or within tolerance of) a
    /// nonpositive integer where the function is infinite. `term` names the
    /// offending series term when the pole was hit during a termwise
    /// operation.
    Pole { z: Complex, term: Option<usize> },
    /// An input outside the mathematical domain of the operation
    /// (e.g. `0^q` with `Re(q) <= 0`).
    Domain(&'static str),
    /// A series evaluation lost effectively all significant digits to
    /// cancellation: the largest intermediate term exceeded the result by
    /// the reported factor.
    Precision { cancellation: f64 },
    /// A parameter record violates one of its documented invariants.
    Spec(String),
    /// An integration step landed on a point where the ODE's coefficients
    /// blow up.
    Singularity { t: f64 },
    /// The integrated state diverged (non-finite or astronomically large).
    Overflow { t: f64 },
}

impl Error {
    fn pole(z: Complex) -> Error {
        Error::Pole { z, term: None }
    }
}

pub(crate) fn pole_error(z: Complex) -> Error {
    Error::pole(z)
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::Pole { z, term: None } => {
                write!(f, "gamma pole at z = {} + {}i", z.re, z.im)
            }
            Error::Pole { z, term: Some(m) } => {
                write!(f, "gamma pole at z = {} + {}i in series term {}", z.re, z.im, m)
            }
            Error::Domain(msg) => write!(f, "domain error: {}", msg),
            Error::Precision { cancellation } => write!(
                f,
                "catastrophic cancellation: largest term exceeds result by {:.3e}",
                cancellation
            ),
            Error::Spec(msg) => write!(f, "invalid specification: {}", msg),
            Error::Singularity { t } => write!(f, "ODE coefficients singular at t = {}", t),
            Error::Overflow { t } => write!(f, "integration diverged near t = {}", t),
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
