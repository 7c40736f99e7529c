//! Screw function g(t), screw line 𝔖_t(z) and the explicit formula, evaluated
//! numerically with explicit error budgets.

pub mod analysis;
pub mod arith;
pub mod error;
pub mod numeric;
pub mod screwfn;
pub mod screwline;
pub mod specfun;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex argument type used throughout the crate.
pub type ComplexValue = Complex64;
