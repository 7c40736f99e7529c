//! The screw function g(t), its derivative, the kernel G_g and the
//! hermitian form it induces on test functions.

use crate::analysis::quad::{integrate, QuadOptions, Tracked};
use crate::analysis::{Estimate, TestFunction};
use crate::arith::{prime_sum_g, prime_sum_plain, sieve_mangoldt, MangoldtTable};
use crate::error::{Error, Result};
use crate::specfun::{digamma, lerch_phi, trigamma};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

/// Distance from a jump point log n below which g′ is refused.
pub const JUMP_RADIUS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScrewConstants {
    /// ψ(1/4)
    pub digamma_quarter: f64,
    /// ψ₁(1/4), which equals Φ(1, 2, 1/4)
    pub trigamma_quarter: f64,
    pub log_pi: f64,
}

#[derive(Debug, Clone)]
pub struct ScrewContext {
    pub mangoldt: Arc<MangoldtTable>,
    pub constants: ScrewConstants,
}

impl ScrewContext {
    pub fn new(mangoldt: Arc<MangoldtTable>) -> Result<Self> {
        let quarter = Complex64::new(0.25, 0.0);
        Ok(ScrewContext {
            mangoldt,
            constants: ScrewConstants {
                digamma_quarter: digamma(quarter)?.re,
                trigamma_quarter: trigamma(quarter)?.re,
                log_pi: PI.ln(),
            },
        })
    }

    /// Context whose sieve covers |t| ≤ t_max.
    pub fn with_range(t_max: f64) -> Result<Self> {
        let bound = (t_max.max(1.0).exp() + 1.0).ceil() as u64;
        Self::new(Arc::new(sieve_mangoldt(bound)?))
    }

    /// Largest |t| the sieve supports.
    pub fn t_max(&self) -> f64 {
        (self.mangoldt.bound() as f64).ln()
    }

    /// g(t), even in t, with g(0) = 0.
    pub fn g(&self, t: f64) -> Result<f64> {
        let t = t.abs();
        if t == 0.0 {
            return Ok(0.0);
        }
        let c = &self.constants;
        let sh = (t / 4.0).sinh();
        let exponential = -16.0 * sh * sh;
        let linear = -0.5 * t * (c.digamma_quarter - c.log_pi);
        let x = (-2.0 * t).exp();
        let lerch = lerch_phi(x, 2, Complex64::new(0.25, 0.0))?.re;
        let lerch_block = -0.25 * (c.trigamma_quarter - (-0.5 * t).exp() * lerch);
        let primes = prime_sum_g(t, &self.mangoldt)?;
        Ok(exponential + linear + lerch_block + primes)
    }

    /// −g′(t) in closed form for t > 0.
    fn minus_g_prime_positive(&self, t: f64) -> Result<f64> {
        let c = &self.constants;
        let x = (-2.0 * t).exp();
        let lerch = lerch_phi(x, 1, Complex64::new(0.25, 0.0))?.re;
        Ok(4.0 * (0.5 * t).sinh() - prime_sum_plain(t, &self.mangoldt)?
            + 0.5 * (c.digamma_quarter - c.log_pi)
            + 0.5 * (-0.5 * t).exp() * lerch)
    }

    /// g′(t) for t ≠ 0 away from the jump points log n; odd in t.
    pub fn g_prime(&self, t: f64) -> Result<f64> {
        if t == 0.0 || !t.is_finite() {
            return Err(Error::Domain {
                function: "g_prime",
                detail: format!("t = {t}; g′ is unbounded at 0"),
            });
        }
        let a = t.abs();
        if let Some((n, d)) = self.mangoldt.nearest_jump(a) {
            if d < JUMP_RADIUS {
                return Err(Error::JumpPoint {
                    t,
                    n,
                    radius: JUMP_RADIUS,
                });
            }
        }
        let v = -self.minus_g_prime_positive(a)?;
        Ok(if t > 0.0 { v } else { -v })
    }

    /// G_g(t, u) = g(t−u) − g(t) − g(u) + g(0)
    pub fn g_kernel(&self, t: f64, u: f64) -> Result<f64> {
        Ok(self.g(t - u)? - self.g(t)? - self.g(u)?)
    }

    /// ⟨φ1, φ2⟩ = ∫∫ G_g(t,u) φ1(u) φ2(t) dt du by nested adaptive quadrature;
    /// `tol` is an absolute target.
    pub fn herm_form_gg(&self, phi1: &TestFunction, phi2: &TestFunction, tol: f64) -> Result<Estimate<f64>> {
        phi1.validate()?;
        phi2.validate()?;
        if phi1.is_zero() || phi2.is_zero() {
            return Ok(Estimate::exact(0.0));
        }
        let (a1, b1) = phi1.support();
        let (a2, b2) = phi2.support();
        let reach = (b2 - a1).abs().max((a2 - b1).abs()).max(b1.abs()).max(b2.abs()).max(a1.abs()).max(a2.abs());
        if reach > self.t_max() {
            return Err(Error::TableTooSmall {
                bound: self.mangoldt.bound(),
                required: reach.exp().ceil() as u64,
            });
        }
        let logs: Vec<f64> = self
            .mangoldt
            .prime_powers()
            .iter()
            .map(|p| p.ln_n)
            .take_while(|&l| l <= reach)
            .collect();
        let mass2 = l1_norm(phi2)?;
        let inner_tol = 0.25 * tol / mass2.max(1e-300);
        let inner_opts = QuadOptions {
            abs_tol: inner_tol,
            rel_tol: 1e-14,
            max_evaluations: 200_000,
            min_width: 1e-13,
        };

        // ∫ g(t−u) φ1(u) du, kinks of g at u = t and u = t ± log n
        let inner = |t: f64| -> Result<(f64, f64)> {
            let mut cuts = vec![t];
            for &l in &logs {
                cuts.push(t - l);
                cuts.push(t + l);
            }
            let r = integrate(
                |u: f64| match self.g(t - u) {
                    Ok(g) => g * phi1.eval(u),
                    Err(_) => f64::NAN,
                },
                a1,
                b1,
                &cuts,
                &inner_opts,
            )?;
            Ok((r.value, r.error))
        };
        let first_error = std::sync::Mutex::new(None);
        let outer_opts = QuadOptions {
            abs_tol: 0.25 * tol,
            rel_tol: 1e-14,
            max_evaluations: 20_000,
            min_width: 1e-10,
        };
        let outer = integrate(
            |t: f64| {
                let w = phi2.eval(t);
                if w == 0.0 {
                    return Tracked::default();
                }
                match inner(t) {
                    Ok((v, e)) => Tracked {
                        value: w * v,
                        aux: w.abs() * e,
                    },
                    Err(err) => {
                        first_error.lock().unwrap().get_or_insert(err);
                        Tracked { value: f64::NAN, aux: 0.0 }
                    }
                }
            },
            a2,
            b2,
            &[phi2.center],
            &outer_opts,
        )?;
        if let Some(err) = first_error.into_inner().unwrap() {
            return Err(err);
        }
        // −(∫φ1)(∫g φ2) − (∫φ2)(∫g φ1); each single integral only when needed
        let single = |phi: &TestFunction| -> Result<(f64, f64)> {
            let (a, b) = phi.support();
            let mut cuts = vec![0.0];
            cuts.extend(logs.iter().flat_map(|&l| [l, -l]));
            let r = integrate(
                |t: f64| self.g(t).map(|g| g * phi.eval(t)).unwrap_or(f64::NAN),
                a,
                b,
                &cuts,
                &inner_opts,
            )?;
            Ok((r.value, r.error))
        };
        let m1 = phi1.integral();
        let m2 = phi2.integral();
        let mut value = outer.value.value;
        let mut error = outer.error + outer.value.aux;
        if m1 != 0.0 {
            let (v, e) = single(phi2)?;
            value -= m1 * v;
            error += m1.abs() * e;
        }
        if m2 != 0.0 {
            let (v, e) = single(phi1)?;
            value -= m2 * v;
            error += m2.abs() * e;
        }
        if !value.is_finite() {
            return Err(Error::PrecisionLoss {
                function: "herm_form_gg",
                detail: "non-finite integrand".into(),
            });
        }
        Ok(Estimate {
            value,
            quad_error: error,
            tail_bound: 0.0,
            zero_trunc_bound: 0.0,
        })
    }
}

fn l1_norm(phi: &TestFunction) -> Result<f64> {
    let (a, b) = phi.support();
    let r = integrate(|t: f64| phi.eval(t).abs(), a, b, &[phi.center], &QuadOptions::default())?;
    Ok(r.value)
}
