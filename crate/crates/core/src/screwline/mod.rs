//! The screw line 𝔖_t(z) = i(1+Θ(z))/(2√π) · 𝔓_t(z), the closed form 𝔓_t(z),
//! and L² norms over the real line.
//!
//! Near a zero γ, 𝔓_t has a pole and 1+Θ a zero. Writing 𝔓_t = R_t + E_t·ζ'/ζ
//! with E_t(z) = (e^{itz} − 1)/(iz) and 1+Θ = 2ζ/D, where
//! D = (1+L)ζ + ζ' and L = 1/s + 1/(s−1) − ½log π + ½ψ(s/2), s = 1/2 − iz,
//! gives 𝔖_t = i(ζ·R_t + E_t·ζ')/(√π·D), which has no singular factor.

mod special;
mod transform;

pub use special::{p_at_zero_extrapolated, special_value_limit, ExtrapolationReport, SpecialValueReport};
pub use transform::{norm_sq_p_hat, p_hat_norm_ceiling, p_hat_phi, PHatRule};

use crate::analysis::quad::{integrate, QuadOptions, Tracked};
use crate::analysis::{Estimate, QuadratureSpec, TailModel};
use crate::arith::prime_sum_osc;
use crate::error::{Error, Result};
use crate::numeric::{osc_kernel, pairwise_sum};
use crate::screwfn::ScrewContext;
use crate::specfun::{digamma, zeta_and_derivative, BERNOULLI_EVEN};
use crate::zeros::ZeroTable;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

/// Radius of the quadrature exclusion zones around tabulated zeros.
pub const EXCLUSION_RADIUS: f64 = 1e-6;
/// Smallest radius accepted by [`ScrewLineContext::norm_sq_quad`].
pub const MIN_NORM_RADIUS: f64 = 100.0;
/// Below this |z| the digamma difference quotient uses its Taylor series.
const SMALL_Z: f64 = 1e-3;
const TAYLOR_TERMS: usize = 10;
/// Fraction of the modelled tail charged as its uncertainty.
const TAIL_MODEL_UNCERTAINTY: f64 = 0.3;

#[derive(Debug, Clone)]
pub struct ScrewLineContext {
    pub screw: ScrewContext,
    pub quad_defaults: QuadratureSpec,
    /// Zeros around which [`ScrewLineContext::frak_s`] refuses to evaluate.
    pub exclusion: Option<Arc<ZeroTable>>,
    /// ζ(k+2, 1/4) for the Taylor form of (ψ(1/4+w) − ψ(1/4))/w.
    hurwitz_quarter: [f64; TAYLOR_TERMS],
}

/// Pieces shared by 𝔓, 𝔖 and Θ at one z.
#[derive(Debug, Clone, Copy)]
pub struct ZetaParts {
    pub zeta: Complex64,
    pub zeta_prime: Complex64,
    /// (1+L)ζ + ζ'
    pub denominator: Complex64,
    pub l: Complex64,
}

/// ζ(m, a) by direct summation with an Euler–Maclaurin tail; real a > 0, m ≥ 2.
fn hurwitz_real(m: u32, a: f64) -> f64 {
    let n = 200usize;
    let mut sum = 0.0;
    for k in (0..n).rev() {
        sum += (k as f64 + a).powi(-(m as i32));
    }
    let v = n as f64 + a;
    let mf = m as f64;
    sum + v.powf(1.0 - mf) / (mf - 1.0) + 0.5 * v.powf(-mf) + mf / 12.0 * v.powf(-mf - 1.0)
        - mf * (mf + 1.0) * (mf + 2.0) / 720.0 * v.powf(-mf - 3.0)
}

/// Σ_{n≥0} e^{−λn}/((n+a)(n+a+w)) for λ > 0, a > 0. Slowly decaying cases
/// (λ < 0.2) sum a head directly and the rest by Euler–Maclaurin.
fn pair_series(lambda: f64, a: f64, w: Complex64) -> Result<Complex64> {
    let term = |n: f64| (-lambda * n).exp() / ((n + a) * (n + a + w));
    let x = (-lambda).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    if lambda >= 0.2 {
        let mut xn = 1.0;
        for n in 0..100_000usize {
            let an = n as f64 + a;
            let d = an * (an + w);
            if d.norm() == 0.0 {
                return Err(Error::Pole {
                    function: "frak_p",
                    at: format!("w = {w}"),
                });
            }
            sum += xn / d;
            xn *= x;
            let next = an + 1.0;
            let clear = next + w.re;
            if clear > 0.0 && xn / (next * clear * (1.0 - x)) <= 1e-17 * sum.norm() || xn == 0.0 {
                return Ok(sum);
            }
        }
        return Err(Error::NonConvergence {
            function: "frak_p",
            terms: 100_000,
        });
    }
    let head = (2.0 * w.norm() + 20.0).ceil();
    for n in 0..head as usize {
        let an = n as f64 + a;
        let d = an * (an + w);
        if d.norm() == 0.0 {
            return Err(Error::Pole {
                function: "frak_p",
                at: format!("w = {w}"),
            });
        }
        sum += (-lambda * n as f64).exp() / d;
    }
    // ∫_N^∞ term(u) du with u = N/v
    let opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-14,
        max_evaluations: 200_000,
        min_width: 1e-14,
    };
    let integral = integrate(
        |v: f64| {
            if v == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let u = head / v;
            term(u) * head / (v * v)
        },
        0.0,
        1.0,
        &[],
        &opts,
    )?
    .value;
    // f^{(m)}(N) from Leibniz over e^{−λu}, 1/(u+a), 1/(u+a+w)
    let derivative = |m: usize| -> Complex64 {
        let inv = |base: Complex64, k: usize| -> Complex64 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * factorial(k) / base.powi(k as i32 + 1)
        };
        let pa = Complex64::new(head + a, 0.0);
        let pb = pa + w;
        let mut total = Complex64::new(0.0, 0.0);
        for j in 0..=m {
            let mut pq = Complex64::new(0.0, 0.0);
            for i in 0..=j {
                pq += binomial(j, i) * inv(pa, i) * inv(pb, j - i);
            }
            total += binomial(m, j) * (-lambda).powi((m - j) as i32) * pq;
        }
        total * (-lambda * head).exp()
    };
    let mut tail = integral + 0.5 * term(head);
    let mut power = 1.0;
    for (k, b) in BERNOULLI_EVEN.iter().take(5).enumerate() {
        let order = 2 * k + 1;
        power *= (order as f64) * (order as f64 + 1.0);
        tail -= *b / power * derivative(order);
    }
    Ok(sum + tail)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

impl ScrewLineContext {
    pub fn new(screw: ScrewContext) -> Self {
        let mut hurwitz_quarter = [0.0; TAYLOR_TERMS];
        for (k, h) in hurwitz_quarter.iter_mut().enumerate() {
            *h = hurwitz_real(k as u32 + 2, 0.25);
        }
        ScrewLineContext {
            screw,
            quad_defaults: QuadratureSpec::default(),
            exclusion: None,
            hurwitz_quarter,
        }
    }

    pub fn with_exclusion(mut self, table: Arc<ZeroTable>) -> Self {
        self.exclusion = Some(table);
        self
    }

    /// ζ, ζ', L and D at s = 1/2 − iz.
    pub fn zeta_parts(&self, z: Complex64) -> Result<ZetaParts> {
        let s = Complex64::new(0.5, 0.0) - Complex64::i() * z;
        let (zeta, zeta_prime) = zeta_and_derivative(s)?;
        let l = s.inv() + (s - 1.0).inv() - 0.5 * self.screw.constants.log_pi + 0.5 * digamma(s / 2.0)?;
        let denominator = (1.0 + l) * zeta + zeta_prime;
        Ok(ZetaParts {
            zeta,
            zeta_prime,
            denominator,
            l,
        })
    }

    fn checked_denominator(parts: &ZetaParts) -> Result<Complex64> {
        let scale = ((1.0 + parts.l) * parts.zeta).norm() + parts.zeta_prime.norm();
        if parts.denominator.norm() < 1e-12 * scale || parts.denominator.norm() == 0.0 {
            return Err(Error::PrecisionLoss {
                function: "one_plus_theta",
                detail: format!("|(1+L)ζ + ζ'| = {:e} against scale {scale:e}", parts.denominator.norm()),
            });
        }
        Ok(parts.denominator)
    }

    /// 1 + Θ(z) = 2A(z)/E(z) = 2ζ/((1+L)ζ + ζ').
    pub fn one_plus_theta(&self, z: Complex64) -> Result<Complex64> {
        let p = self.zeta_parts(z)?;
        Ok(2.0 * p.zeta / Self::checked_denominator(&p)?)
    }

    /// Θ(z) = ((1−L)ζ − ζ')/((1+L)ζ + ζ').
    pub fn theta(&self, z: Complex64) -> Result<Complex64> {
        let p = self.zeta_parts(z)?;
        Ok(((1.0 - p.l) * p.zeta - p.zeta_prime) / Self::checked_denominator(&p)?)
    }

    /// (ψ(1/4 + w) − ψ(1/4))/w
    fn digamma_quotient(&self, w: Complex64) -> Result<Complex64> {
        if w.norm() < 0.5 * SMALL_Z {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut power = Complex64::new(1.0, 0.0);
            for h in &self.hurwitz_quarter {
                sum += power * *h;
                power *= -w;
            }
            return Ok(sum);
        }
        Ok((digamma(Complex64::new(0.25, 0.0) + w)? - self.screw.constants.digamma_quarter) / w)
    }

    /// Lerch block −(e^{−t/2}/(2iz))[Φ(x,1,1/4) − Φ(x,1,1/4+w)], x = e^{−2t},
    /// summed as the single series −(e^{−t/2}/4) Σ xⁿ/((n+1/4)(n+1/4+w)).
    fn lerch_block(t: f64, w: Complex64) -> Result<Complex64> {
        Ok(-0.25 * (-0.5 * t).exp() * pair_series(2.0 * t, 0.25, w)?)
    }

    /// 𝔓_t(z) split as (R_t(z), E_t(z)) with 𝔓_t = R_t + E_t·ζ'/ζ(1/2 − iz).
    pub fn frak_p_regular(&self, t: f64, z: Complex64) -> Result<(Complex64, Complex64)> {
        let t = t.abs();
        let iz = Complex64::i() * z;
        let one = Complex64::new(1.0, 0.0);
        for (den, at) in [(one - 2.0 * iz, "-i/2"), (one + 2.0 * iz, "i/2")] {
            if den.norm() < 1e-14 {
                return Err(Error::Pole {
                    function: "frak_p",
                    at: at.into(),
                });
            }
        }
        if t == 0.0 {
            return Ok((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
        }
        let c = &self.screw.constants;
        let w = iz / 2.0;
        let s = one / 2.0 - iz;
        let rational = 4.0 * (0.5 * t).exp_m1() / (one - 2.0 * iz) + 4.0 * (-0.5 * t).exp_m1() / (one + 2.0 * iz);
        let primes = -prime_sum_osc(t, z, &self.screw.mangoldt)?;
        let e_t = osc_kernel(z, t);
        let quarter = Complex64::new(0.25, 0.0);
        let bracket = -c.log_pi + 0.5 * digamma(s / 2.0)? + 0.5 * digamma(quarter + w)?;
        let digamma_block = 0.25 * self.digamma_quotient(w)?;
        let lerch = Self::lerch_block(t, w)?;
        Ok((rational + primes + e_t * bracket + digamma_block + lerch, e_t))
    }

    /// 𝔓_t(z); even in t.
    pub fn frak_p(&self, t: f64, z: Complex64) -> Result<Complex64> {
        let (r, e_t) = self.frak_p_regular(t, z)?;
        if t == 0.0 {
            return Ok(r);
        }
        let p = self.zeta_parts(z)?;
        if p.zeta == Complex64::new(0.0, 0.0) {
            return Err(Error::Pole {
                function: "frak_p",
                at: format!("{z}"),
            });
        }
        Ok(r + e_t * p.zeta_prime / p.zeta)
    }

    fn check_exclusion(&self, z: f64) -> Result<()> {
        if let Some(table) = &self.exclusion {
            let ords = table.ordinates();
            let a = z.abs();
            let i = ords.partition_point(|&g| g < a);
            for j in [i.wrapping_sub(1), i] {
                if let Some(&g) = ords.get(j) {
                    if (a - g).abs() < EXCLUSION_RADIUS {
                        return Err(Error::NearZero {
                            z: format!("{z}"),
                            ordinate: g.copysign(z),
                            radius: EXCLUSION_RADIUS,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// 𝔖_t(z) for real z; even in t.
    pub fn frak_s(&self, t: f64, z: f64) -> Result<Complex64> {
        if t == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        self.check_exclusion(z)?;
        self.frak_s_unchecked(t, z)
    }

    fn frak_s_unchecked(&self, t: f64, z: f64) -> Result<Complex64> {
        if t == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let zc = Complex64::new(z, 0.0);
        let (r, e_t) = self.frak_p_regular(t, zc)?;
        let p = self.zeta_parts(zc)?;
        let d = Self::checked_denominator(&p)?;
        Ok(Complex64::i() * (p.zeta * r + e_t * p.zeta_prime) / (PI.sqrt() * d))
    }

    /// ‖𝔖_t‖² = 2∫₀^∞ |𝔖_t(z)|² dz by quadrature on [0, T] plus a fitted tail.
    pub fn norm_sq_quad(&self, t: f64, spec: &QuadratureSpec, table: Option<&ZeroTable>) -> Result<Estimate<f64>> {
        spec.validate()?;
        if spec.radius < MIN_NORM_RADIUS {
            return Err(Error::Domain {
                function: "norm_sq_quad",
                detail: format!("radius {} below {MIN_NORM_RADIUS}", spec.radius),
            });
        }
        if t == 0.0 {
            return Ok(Estimate::exact(0.0));
        }
        let integrand = |z: f64| self.frak_s_unchecked(t, z).map(|v| (v.norm_sqr(), 0.0));
        line_norm(&integrand, spec, table)
    }
}

/// 2∫₀^T f(z) dz for an even, nonnegative integrand, skipping exclusion zones
/// around table zeros, plus the tail model of `spec`. The integrand returns
/// (value, error density); the integrated density is added to the quadrature error.
pub(crate) fn line_norm(
    f: &(dyn Fn(f64) -> Result<(f64, f64)> + Sync),
    spec: &QuadratureSpec,
    table: Option<&ZeroTable>,
) -> Result<Estimate<f64>> {
    let big_t = spec.radius;
    let half = 0.5 * big_t;
    let zones: Vec<(f64, f64)> = table
        .map(|tb| {
            tb.ordinates()
                .iter()
                .filter(|&&g| g + EXCLUSION_RADIUS < big_t)
                .map(|&g| (g - EXCLUSION_RADIUS, g + EXCLUSION_RADIUS))
                .collect()
        })
        .unwrap_or_default();
    let mut cuts = vec![half];
    for &(a, b) in &zones {
        cuts.push(a);
        cuts.push(b);
    }
    let in_zone = |z: f64| {
        let i = zones.partition_point(|&(_, b)| b <= z);
        zones.get(i).is_some_and(|&(a, b)| z > a && z < b)
    };
    let failure = std::sync::Mutex::new(None);
    let opts = QuadOptions {
        abs_tol: 1e-15,
        rel_tol: spec.rel_tol,
        max_evaluations: spec.max_nodes,
        min_width: 1e-9,
    };
    let result = integrate(
        |z: f64| {
            if in_zone(z) {
                return Tracked::default();
            }
            match f(z) {
                Ok((value, aux)) => Tracked { value, aux },
                Err(e) => {
                    failure.lock().unwrap().get_or_insert(e);
                    Tracked::default()
                }
            }
        },
        0.0,
        big_t,
        &cuts,
        &opts,
    )?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    // Excluded mass: trapezoid across each zone, charged with the edge spread.
    let mut zone_values = Vec::with_capacity(zones.len());
    let mut zone_errors = Vec::with_capacity(zones.len());
    for &(a, b) in &zones {
        let fa = f(a)?.0;
        let fb = f(b)?.0;
        zone_values.push(0.5 * (fa + fb) * (b - a));
        zone_errors.push((fa - fb).abs() * (b - a) + 1e-3 * fa.max(fb) * (b - a));
    }
    let body = result.value.value + pairwise_sum(&zone_values);
    let body_error = result.error + result.value.aux + pairwise_sum(&zone_errors);

    let (upper, _) = result.partial(half, big_t);
    let tail = match spec.tail_model {
        TailModel::InverseSquare => upper.value,
        TailModel::LogSqOverT | TailModel::None => {
            let antiderivative = |z: f64| -> f64 {
                let l = z.ln();
                -(l * l + 2.0 * l + 2.0) / z
            };
            let c = upper.value / (antiderivative(big_t) - antiderivative(half));
            -c * antiderivative(big_t)
        }
    };
    let (value, tail_bound) = match spec.tail_model {
        TailModel::None => (2.0 * body, 2.0 * tail),
        _ => (2.0 * (body + tail), 2.0 * TAIL_MODEL_UNCERTAINTY * tail),
    };
    Ok(Estimate {
        value,
        quad_error: 2.0 * body_error,
        tail_bound,
        zero_trunc_bound: 0.0,
    })
}
