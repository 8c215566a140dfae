use thiserror::Error;

/// Errors raised while evaluating kernels, response functions or oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("{field} must be {requirement} (got {value})")]
    Domain {
        field: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// The plasma frequency is required for permittivity but was not supplied.
    #[error("x_p must be supplied to evaluate the permittivity")]
    MissingPlasmaFrequency,

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge: estimate {estimate:e} with error {error:e} after {intervals} intervals")]
    NotConverged {
        estimate: f64,
        error: f64,
        intervals: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain {
            field,
            requirement: "> 0",
            value,
        })
    }
}

pub(crate) fn require_non_negative(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain {
            field,
            requirement: ">= 0",
            value,
        })
    }
}
