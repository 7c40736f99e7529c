//! Quadrature, test functions, error-carrying estimates and the end-to-end
//! identity verifiers.

pub mod quad;
pub mod testfn;
pub mod verify;

pub use quad::{adaptive_quad, integrate, Panel, QuadOptions, QuadResult, QuadValue, Tracked};
pub use testfn::{TestFunction, TestFunctionKind};
pub use verify::{verify_transform_identity, verify_weil_identity, PairCheck, PathValue, VerificationReport};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A value with its error budget split by source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate<T> {
    pub value: T,
    pub quad_error: f64,
    pub tail_bound: f64,
    pub zero_trunc_bound: f64,
}

impl<T> Estimate<T> {
    pub fn exact(value: T) -> Self {
        Estimate {
            value,
            quad_error: 0.0,
            tail_bound: 0.0,
            zero_trunc_bound: 0.0,
        }
    }

    pub fn total_error(&self) -> f64 {
        self.quad_error + self.tail_bound + self.zero_trunc_bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailModel {
    None,
    /// Integrand c·log²z/z² fitted on [T/2, T]; tail c·(log²T + 2log T + 2)/T.
    LogSqOverT,
    /// Integrand c/z² fitted on [T/2, T]; tail c/T.
    InverseSquare,
}

/// Settings for integrals over the real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub radius: f64,
    pub rel_tol: f64,
    pub max_nodes: usize,
    pub tail_model: TailModel,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            radius: 2000.0,
            rel_tol: 1e-8,
            max_nodes: 4_000_000,
            tail_model: TailModel::LogSqOverT,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::Domain {
                function: "QuadratureSpec",
                detail: format!("radius {} must be positive", self.radius),
            });
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 0.1) {
            return Err(Error::Domain {
                function: "QuadratureSpec",
                detail: format!("rel_tol {} outside (0, 0.1)", self.rel_tol),
            });
        }
        Ok(())
    }
}
