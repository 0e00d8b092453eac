use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("root finding did not converge after {iterations} iterations (bracket [{lo}, {hi}], residual {residual:e})")]
    RootNotConverged {
        iterations: usize,
        lo: f64,
        hi: f64,
        residual: f64,
    },

    #[error("series did not converge within {max_j} blocks (partial value {value}, last block {last_block:e})")]
    SeriesNotConverged {
        value: f64,
        max_j: usize,
        last_block: f64,
    },

    #[error("quadrature did not reach tolerance (estimate {value}, error estimate {error:e})")]
    QuadratureNotConverged { value: f64, error: f64 },

    #[error("optimizer failed: {0}")]
    Optimization(String),

    #[error("information matrix is not positive definite (min eigenvalue {min_eigenvalue:e}, condition number {condition:e})")]
    SingularInformation { min_eigenvalue: f64, condition: f64 },

    #[error("degenerate variance: mu2 - mu1^2 = {0:e}")]
    DegenerateVariance(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
