//! Smooth compactly supported bumps A·exp(−1/(1−u²)), u = (t−c)/h, and their derivatives.

use super::quad::{integrate, QuadOptions};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestFunctionKind {
    Bump,
    /// t-derivative of the bump with the same parameters; integrates to zero.
    BumpDerivative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub center: f64,
    pub half_width: f64,
    pub amplitude: f64,
    pub kind: TestFunctionKind,
}

fn profile(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        return 0.0;
    }
    let one_minus = (1.0 - u) * (1.0 + u);
    (-1.0 / one_minus).exp()
}

/// d/du of the profile.
fn profile_derivative(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        return 0.0;
    }
    let one_minus = (1.0 - u) * (1.0 + u);
    profile(u) * (-2.0 * u / (one_minus * one_minus))
}

impl TestFunction {
    pub fn bump(center: f64, half_width: f64, amplitude: f64) -> Self {
        TestFunction {
            center,
            half_width,
            amplitude,
            kind: TestFunctionKind::Bump,
        }
    }

    pub fn bump_derivative(center: f64, half_width: f64, amplitude: f64) -> Self {
        TestFunction {
            kind: TestFunctionKind::BumpDerivative,
            ..Self::bump(center, half_width, amplitude)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.half_width > 0.0 && self.half_width.is_finite() && self.center.is_finite() && self.amplitude.is_finite()) {
            return Err(Error::Domain {
                function: "TestFunction",
                detail: format!("{self:?}"),
            });
        }
        Ok(())
    }

    /// Closed support [c − h, c + h].
    pub fn support(&self) -> (f64, f64) {
        (self.center - self.half_width, self.center + self.half_width)
    }

    pub fn is_zero(&self) -> bool {
        self.amplitude == 0.0
    }

    /// Dφ for a bump; `None` for a derivative (no closed form in the family).
    pub fn derivative(&self) -> Option<TestFunction> {
        match self.kind {
            TestFunctionKind::Bump => Some(TestFunction {
                kind: TestFunctionKind::BumpDerivative,
                ..*self
            }),
            TestFunctionKind::BumpDerivative => None,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let u = (t - self.center) / self.half_width;
        match self.kind {
            TestFunctionKind::Bump => self.amplitude * profile(u),
            TestFunctionKind::BumpDerivative => self.amplitude * profile_derivative(u) / self.half_width,
        }
    }

    /// ∫φ(t) dt
    pub fn integral(&self) -> f64 {
        match self.kind {
            TestFunctionKind::Bump => self.amplitude * self.half_width * BUMP_MASS,
            TestFunctionKind::BumpDerivative => 0.0,
        }
    }

    /// φ̂(z) = ∫ φ(t) e^{izt} dt for |Im z| ≤ 1.
    pub fn fourier(&self, z: Complex64) -> Result<Complex64> {
        if z.im.abs() > 1.0 {
            return Err(Error::Domain {
                function: "fourier",
                detail: format!("|Im z| > 1 at z = {z}"),
            });
        }
        if self.amplitude == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if z == Complex64::new(0.0, 0.0) {
            return Ok(Complex64::new(self.integral(), 0.0));
        }
        // Symmetric reduction: the profile is even, its derivative odd.
        let h = self.half_width;
        let zh = z * h;
        let opts = QuadOptions {
            rel_tol: 1e-13,
            abs_tol: 1e-15,
            ..QuadOptions::default()
        };
        // Panels resolving the oscillation are supplied as breakpoints.
        let n_panels = ((zh.norm() / std::f64::consts::PI).ceil() as usize).clamp(1, 100_000);
        let cuts: Vec<f64> = (1..n_panels).map(|k| k as f64 / n_panels as f64).collect();
        let half = match self.kind {
            TestFunctionKind::Bump => integrate(|u: f64| (zh * u).cos() * profile(u), 0.0, 1.0, &cuts, &opts)?.value * 2.0,
            TestFunctionKind::BumpDerivative => {
                integrate(|u: f64| (zh * u).sin() * profile_derivative(u), 0.0, 1.0, &cuts, &opts)?.value
                    * Complex64::new(0.0, 2.0)
                    / h
            }
        };
        Ok((Complex64::i() * z * self.center).exp() * half * h * self.amplitude)
    }
}

/// ∫_{−1}^{1} exp(−1/(1−u²)) du
pub const BUMP_MASS: f64 = 0.443_993_816_168_079_4;
