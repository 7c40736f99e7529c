//! Complex special functions.

mod gamma;
mod lerch;
mod zeta;

pub use gamma::{digamma, log_gamma, trigamma, EULER_MASCHERONI};
pub(crate) use gamma::BERNOULLI_EVEN;
pub use lerch::{expint, lerch_phi};
pub use zeta::{
    euler_maclaurin_cutoff, zeta, zeta_and_derivative, zeta_prime, zeta_with_cutoff, zlog_deriv,
    MAX_HEIGHT,
};
