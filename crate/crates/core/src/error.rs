use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A textual value could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// The requested characteristic root is not simple.
    #[error("root {root} is not simple: |P'(root)| = {derivative_abs:e} <= tolerance {tolerance:e}")]
    NotSimple {
        root: Complex64,
        derivative_abs: f64,
        tolerance: f64,
    },

    /// Simultaneous root iteration hit its iteration cap.
    #[error(
        "root iteration did not converge after {iterations} sweeps (last max correction {max_correction:e})"
    )]
    NoConvergence {
        iterations: usize,
        max_correction: f64,
        partial: Vec<Complex64>,
    },

    /// Adaptive quadrature could not meet its tolerance.
    #[error("quadrature did not reach tolerance {tolerance:e} (estimated error {estimate:e})")]
    Quadrature { tolerance: f64, estimate: f64 },
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
