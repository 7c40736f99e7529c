//! 𝒫̂_φ(z) = ∫ 𝔖_t(z) φ(t) dt and its L² norm.
//!
//! 𝔖_t(z) is linear in the pair (R_t(z), E_t(z)), and every t-dependence inside
//! R_t is one of e^{±t/2}, e^{izt}, e^{−t/2}e^{−2nt} or a prime-power step at
//! t = log n. So the t-integral reduces to a handful of φ-moments (computed once)
//! and one oscillatory sum per z over a fixed node set split at the steps.

use super::{line_norm, ScrewLineContext};
use crate::analysis::quad::gauss_kronrod_rule;
use crate::analysis::{Estimate, QuadratureSpec, TestFunction};
#[cfg(doc)]
use crate::analysis::TailModel;
use crate::error::{Error, Result};
use crate::numeric::osc_kernel;
use crate::specfun::digamma;
use crate::zeros::ZeroTable;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Maximum step width, so the bump profile is resolved at any z.
const MAX_PANEL: f64 = 0.05;
/// Below this |z| the 1/(iz) blocks are integrated node by node.
const DIRECT_Z: f64 = 1.0;
const LERCH_CAP: usize = 20_000;

/// Weights for the Kronrod (0) and embedded Gauss (1) rules, times φ.
#[derive(Debug, Clone, Copy)]
struct Node {
    t: f64,
    w: [f64; 2],
}

#[derive(Debug, Clone)]
struct Segment {
    nodes: std::ops::Range<usize>,
    /// Prime powers with log n at or below the segment start.
    powers: usize,
}

#[derive(Debug, Clone, Default)]
struct Moments {
    mass: f64,
    plus: f64,
    minus: f64,
    lerch: Vec<f64>,
    lerch_tail: f64,
    segment_mass: Vec<f64>,
}

#[derive(Debug, Clone)]
struct Band {
    z_max: f64,
    nodes: Vec<Node>,
    segments: Vec<Segment>,
    moments: [Moments; 2],
}

/// Quadrature rule in t for 𝒫̂_φ, one node set per frequency band.
#[derive(Debug, Clone)]
pub struct PHatRule {
    bands: Vec<Band>,
    /// (Λ(n)/√n, log n) for prime powers up to the end of the support.
    powers: Vec<(f64, f64)>,
    /// Cumulative Σ Λ(n)/√n over `powers`.
    cumulative: Vec<f64>,
    zero: bool,
}

/// φ(t) + φ(−t) on t ≥ 0, with its support.
fn folded(phi: &TestFunction) -> (impl Fn(f64) -> f64 + '_, f64, f64) {
    let (a, b) = phi.support();
    let hi = a.abs().max(b.abs());
    let lo = if a <= 0.0 && b >= 0.0 { 0.0 } else { a.abs().min(b.abs()) };
    (move |t: f64| phi.eval(t) + phi.eval(-t), lo, hi)
}

impl PHatRule {
    /// Rule accurate for |z| ≤ z_limit.
    pub fn new(ctx: &ScrewLineContext, phi: &TestFunction, z_limit: f64) -> Result<Self> {
        phi.validate()?;
        let (f, lo, hi) = folded(phi);
        if phi.is_zero() {
            return Ok(PHatRule {
                bands: Vec::new(),
                powers: Vec::new(),
                cumulative: Vec::new(),
                zero: true,
            });
        }
        let table = ctx.screw.mangoldt.powers_up_to(hi)?;
        let powers: Vec<(f64, f64)> = table.iter().map(|p| (p.weight, p.ln_n)).collect();
        let mut cumulative = Vec::with_capacity(powers.len());
        let mut acc = 0.0;
        for p in &powers {
            acc += p.0;
            cumulative.push(acc);
        }
        let mut cuts = vec![lo];
        for c in [phi.support().0.abs(), phi.support().1.abs()] {
            if c > lo && c < hi {
                cuts.push(c);
            }
        }
        for p in &powers {
            if p.1 > lo && p.1 < hi {
                cuts.push(p.1);
            }
        }
        cuts.push(hi);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();

        let mut bands = Vec::new();
        let mut z_max = DIRECT_Z;
        loop {
            bands.push(Self::band(&f, &cuts, &powers, z_max));
            if z_max >= z_limit {
                break;
            }
            z_max *= 2.0;
        }
        Ok(PHatRule {
            bands,
            powers,
            cumulative,
            zero: false,
        })
    }

    fn band(f: &impl Fn(f64) -> f64, cuts: &[f64], powers: &[(f64, f64)], z_max: f64) -> Band {
        let rule = gauss_kronrod_rule();
        let mut nodes = Vec::new();
        let mut segments = Vec::new();
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let len = b - a;
            let panels = (z_max * len / PI).max(len / MAX_PANEL).ceil().max(1.0) as usize;
            let start = nodes.len();
            let h = len / panels as f64;
            for p in 0..panels {
                let mid = a + (p as f64 + 0.5) * h;
                for &(x, wk, wg) in &rule {
                    let t = mid + 0.5 * h * x;
                    let v = f(t) * 0.5 * h;
                    nodes.push(Node { t, w: [v * wk, v * wg] });
                }
            }
            let count = powers.partition_point(|p| p.1 <= a);
            segments.push(Segment {
                nodes: start..nodes.len(),
                powers: count,
            });
        }
        let moments = [0, 1].map(|k| Self::moments(&nodes, &segments, k));
        Band {
            z_max,
            nodes,
            segments,
            moments,
        }
    }

    fn moments(nodes: &[Node], segments: &[Segment], k: usize) -> Moments {
        let mut m = Moments::default();
        for n in nodes {
            m.mass += n.w[k];
            m.plus += n.w[k] * (0.5 * n.t).exp_m1();
            m.minus += n.w[k] * (-0.5 * n.t).exp_m1();
        }
        m.segment_mass = segments.iter().map(|s| nodes[s.nodes.clone()].iter().map(|n| n.w[k]).sum()).collect();
        let mut powers: Vec<f64> = nodes.iter().map(|n| n.w[k] * (-0.5 * n.t).exp()).collect();
        let ratios: Vec<f64> = nodes.iter().map(|n| (-2.0 * n.t).exp()).collect();
        let scale: f64 = powers.iter().map(|v| v.abs()).sum::<f64>().max(f64::MIN_POSITIVE);
        for i in 0..LERCH_CAP {
            let v: f64 = powers.iter().sum();
            m.lerch.push(v);
            let abs: f64 = powers.iter().map(|v| v.abs()).sum();
            let a = i as f64 + 0.25;
            if abs / (a * a) < 1e-18 * scale {
                return m;
            }
            for (p, r) in powers.iter_mut().zip(&ratios) {
                *p *= r;
            }
        }
        // Σ_{n ≥ cap} |L_n|/n² with |L_n| nonincreasing
        let last: f64 = powers.iter().map(|v| v.abs()).sum();
        m.lerch_tail = 0.25 * last / (LERCH_CAP as f64 - 1.0);
        m
    }

    /// 𝒫̂_φ(z) for real z, with the Kronrod–Gauss discrepancy as error.
    pub fn eval(&self, ctx: &ScrewLineContext, z: f64) -> Result<(Complex64, f64)> {
        let zero = Complex64::new(0.0, 0.0);
        if self.zero {
            return Ok((zero, 0.0));
        }
        let a = z.abs();
        let band = self
            .bands
            .iter()
            .find(|b| b.z_max >= a)
            .ok_or_else(|| Error::Domain {
                function: "p_hat_phi",
                detail: format!("|z| = {a} beyond rule limit {}", self.bands.last().map_or(0.0, |b| b.z_max)),
            })?;
        let zc = Complex64::new(z, 0.0);
        let iz = Complex64::i() * zc;
        let one = Complex64::new(1.0, 0.0);
        let w = iz / 2.0;
        let s = one / 2.0 - iz;
        let parts = ctx.zeta_parts(zc)?;
        let d = ScrewLineContext::checked_denominator(&parts)?;
        let bracket = -ctx.screw.constants.log_pi
            + 0.5 * digamma(s / 2.0)?
            + 0.5 * digamma(Complex64::new(0.25, 0.0) + w)?;
        let h = ctx.digamma_quotient(w)?;
        let lerch_den: Vec<Complex64> = (0..band.moments[0].lerch.len().max(band.moments[1].lerch.len()))
            .map(|n| {
                let an = n as f64 + 0.25;
                (an * (an + w)).inv()
            })
            .collect();

        let (prime, e_phi) = if a < DIRECT_Z {
            let mut prime = [zero; 2];
            let mut e = [zero; 2];
            for seg in &band.segments {
                for node in &band.nodes[seg.nodes.clone()] {
                    let k_e = osc_kernel(zc, node.t);
                    let mut k_p = zero;
                    for p in &self.powers[..seg.powers] {
                        k_p += p.0 * osc_kernel(zc, node.t - p.1);
                    }
                    for k in 0..2 {
                        e[k] += node.w[k] * k_e;
                        prime[k] -= node.w[k] * k_p;
                    }
                }
            }
            (prime, e)
        } else {
            let phases: Vec<Complex64> = self.powers.iter().map(|p| p.0 * Complex64::cis(-z * p.1)).collect();
            let mut prime = [zero; 2];
            let mut total = [zero; 2];
            let mut partial = zero;
            let mut included = 0;
            for (si, seg) in band.segments.iter().enumerate() {
                while included < seg.powers {
                    partial += phases[included];
                    included += 1;
                }
                let a_k = if seg.powers == 0 { 0.0 } else { self.cumulative[seg.powers - 1] };
                let mut f = [zero; 2];
                for node in &band.nodes[seg.nodes.clone()] {
                    let e = Complex64::cis(z * node.t);
                    f[0] += node.w[0] * e;
                    f[1] += node.w[1] * e;
                }
                for k in 0..2 {
                    total[k] += f[k];
                    prime[k] -= partial * f[k] - a_k * band.moments[k].segment_mass[si];
                }
            }
            let e = [0, 1].map(|k| (total[k] - band.moments[k].mass) / iz);
            (prime.map(|p| p / iz), e)
        };

        let mut out = [zero; 2];
        let mut lerch_tail: f64 = 0.0;
        for k in 0..2 {
            let m = &band.moments[k];
            let rational = 4.0 * m.plus / (one - 2.0 * iz) + 4.0 * m.minus / (one + 2.0 * iz);
            let mut lerch = zero;
            for (l, den) in m.lerch.iter().zip(&lerch_den) {
                lerch += *l * *den;
            }
            let r = rational + prime[k] + e_phi[k] * bracket + 0.25 * m.mass * h - 0.25 * lerch;
            out[k] = Complex64::i() * (parts.zeta * r + parts.zeta_prime * e_phi[k]) / (PI.sqrt() * d);
            lerch_tail = lerch_tail.max(m.lerch_tail);
        }
        let scale = (parts.zeta / d).norm() / PI.sqrt();
        Ok((out[0], (out[0] - out[1]).norm() + scale * lerch_tail))
    }
}

/// 𝒫̂_φ(z) = ∫ 𝔖_t(z) φ(t) dt for real z.
pub fn p_hat_phi(ctx: &ScrewLineContext, phi: &TestFunction, z: f64) -> Result<Complex64> {
    let rule = PHatRule::new(ctx, phi, z.abs())?;
    Ok(rule.eval(ctx, z)?.0)
}

/// ‖𝒫̂_φ‖² over ℝ by quadrature on [−T, T] plus the tail model of `spec`.
/// For zero-mean φ every block of 𝒫̂_φ(z) is O(1/z), so |𝒫̂_φ|² decays like
/// 1/z² and [`TailModel::InverseSquare`] is the matching model.
pub fn norm_sq_p_hat(
    ctx: &ScrewLineContext,
    phi: &TestFunction,
    spec: &QuadratureSpec,
    table: Option<&ZeroTable>,
) -> Result<Estimate<f64>> {
    spec.validate()?;
    if phi.is_zero() {
        return Ok(Estimate::exact(0.0));
    }
    let rule = PHatRule::new(ctx, phi, spec.radius)?;
    let integrand = |z: f64| {
        let (v, e) = rule.eval(ctx, z)?;
        Ok((v.norm_sqr(), 2.0 * v.norm() * e + e * e))
    };
    line_norm(&integrand, spec, table)
}

/// ∫|φ(t)|·‖𝔖_t‖ dt with ‖𝔖_t‖ = √(−2g(t)); an upper bound for ‖𝒫̂_φ‖.
pub fn p_hat_norm_ceiling(ctx: &ScrewLineContext, phi: &TestFunction) -> Result<f64> {
    if phi.is_zero() {
        return Ok(0.0);
    }
    let (a, b) = phi.support();
    let failure = std::sync::Mutex::new(None);
    let (v, _) = crate::analysis::adaptive_quad(
        |t| match ctx.screw.g(t) {
            Ok(g) => phi.eval(t).abs() * (-2.0 * g).max(0.0).sqrt(),
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                0.0
            }
        },
        a,
        b,
        1e-8,
    )?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(v)
}
