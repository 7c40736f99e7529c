//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument sits on a pole of the evaluated function.
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    /// Argument lies outside the region where the routine is validated.
    #[error("{function}: argument outside supported domain ({detail})")]
    Domain {
        function: &'static str,
        detail: String,
    },

    /// The von Mangoldt table does not reach e^t.
    #[error("von Mangoldt table bound {bound} is smaller than required {required}")]
    TableTooSmall { bound: u64, required: u64 },

    #[error("sieve bound {requested} exceeds the memory guard {limit}")]
    Capacity { requested: u64, limit: u64 },

    /// t is within the rejection radius of a jump point log n.
    #[error("t = {t} lies within {radius:e} of the jump point log {n}")]
    JumpPoint { t: f64, n: u64, radius: f64 },

    /// z is too close to a tabulated zero (pole of the zero sum or inside an exclusion zone).
    #[error("z = {z} lies within {radius:e} of tabulated zero ordinate {ordinate}")]
    NearZero { z: String, ordinate: f64, radius: f64 },

    #[error("loss of precision in {function}: {detail}")]
    PrecisionLoss {
        function: &'static str,
        detail: String,
    },

    /// Adaptive quadrature ran out of node budget.
    #[error("quadrature did not converge after {evaluations} evaluations: estimated error {error:e}, worst interval [{worst_a}, {worst_b}] with error {worst_error:e}")]
    QuadratureNonConvergence {
        evaluations: usize,
        error: f64,
        worst_a: f64,
        worst_b: f64,
        worst_error: f64,
    },

    /// Series or iteration exceeded its term budget.
    #[error("{function}: no convergence after {terms} terms")]
    NonConvergence { function: &'static str, terms: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("zero table invalid: {0}")]
    Validation(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
