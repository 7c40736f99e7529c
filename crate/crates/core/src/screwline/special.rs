//! The two special values of 𝔓_t: the value at z = 0 and the limit along the
//! imaginary axis that recovers −g′(t).

use super::ScrewLineContext;
use crate::error::{Error, Result};
use crate::specfun::digamma;
use num_complex::Complex64;
use serde::Serialize;

/// Sample points z = 0.1·2^{−k}, k = 0..6.
const ORIGIN_SAMPLES: usize = 7;
/// Degree of the polynomial in z² fitted to Re 𝔓_t(z).
const ORIGIN_DEGREE: usize = 3;
/// Heights of the bracket samples along z = iy.
pub const LIMIT_HEIGHTS: [f64; 4] = [50.0, 100.0, 200.0, 400.0];
/// Minimum distance from log n required by the limit.
pub const LIMIT_JUMP_DISTANCE: f64 = 0.01;

#[derive(Debug, Clone, Serialize)]
pub struct ExtrapolationReport {
    pub t: f64,
    pub value: f64,
    /// Spread between the cubic and quadratic fits plus the fit residual.
    pub error: f64,
    pub samples: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecialValueReport {
    pub t: f64,
    pub value: f64,
    pub error: f64,
    /// (y, bracket(y)) pairs.
    pub samples: Vec<(f64, f64)>,
    pub residuals: Vec<f64>,
    pub warning: Option<String>,
}

/// Least squares polynomial fit by modified Gram–Schmidt; returns coefficients
/// and the residual norm.
fn polyfit(x: &[f64], y: &[f64], degree: usize) -> (Vec<f64>, f64) {
    let m = x.len();
    let n = degree + 1;
    let mut q: Vec<Vec<f64>> = (0..n).map(|j| x.iter().map(|&xi| xi.powi(j as i32)).collect()).collect();
    let mut r = vec![vec![0.0; n]; n];
    for j in 0..n {
        for i in 0..j {
            let dot: f64 = (0..m).map(|k| q[i][k] * q[j][k]).sum();
            r[i][j] = dot;
            for k in 0..m {
                q[j][k] -= dot * q[i][k];
            }
        }
        let norm = q[j].iter().map(|v| v * v).sum::<f64>().sqrt();
        r[j][j] = norm;
        for v in q[j].iter_mut() {
            *v /= norm;
        }
    }
    let qty: Vec<f64> = (0..n).map(|j| (0..m).map(|k| q[j][k] * y[k]).sum()).collect();
    let mut coef = vec![0.0; n];
    for j in (0..n).rev() {
        let s: f64 = (j + 1..n).map(|i| r[j][i] * coef[i]).sum();
        coef[j] = (qty[j] - s) / r[j][j];
    }
    let residual = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| {
            let p: f64 = coef.iter().rev().fold(0.0, |acc, c| acc * xi + c);
            (p - yi).powi(2)
        })
        .sum::<f64>()
        .sqrt();
    (coef, residual)
}

/// Neville interpolation of (x, y) evaluated at x = 0.
fn neville_at_zero(x: &[f64], y: &[f64]) -> f64 {
    let mut p = y.to_vec();
    let n = x.len();
    for level in 1..n {
        for i in 0..n - level {
            let j = i + level;
            p[i] = (x[j] * p[i] - x[i] * p[i + 1]) / (x[j] - x[i]);
        }
    }
    p[0]
}

/// 𝔓_t(0) estimated from Re 𝔓_t(z) at small real z by a cubic fit in z².
/// Re 𝔓_t is even in real z, so the fit variable is z² (scaled to [0, 1]).
pub fn p_at_zero_extrapolated(ctx: &ScrewLineContext, t: f64) -> Result<ExtrapolationReport> {
    let zs: Vec<f64> = (0..ORIGIN_SAMPLES).map(|k| 0.1 * 0.5f64.powi(k as i32)).collect();
    let mut samples = Vec::with_capacity(zs.len());
    for &z in &zs {
        samples.push((z, ctx.frak_p(t, Complex64::new(z, 0.0))?.re));
    }
    let u: Vec<f64> = zs.iter().map(|z| (z / 0.1).powi(2)).collect();
    let v: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let (cubic, residual) = polyfit(&u, &v, ORIGIN_DEGREE);
    let (quadratic, _) = polyfit(&u, &v, ORIGIN_DEGREE - 1);
    Ok(ExtrapolationReport {
        t,
        value: cubic[0],
        error: (cubic[0] - quadratic[0]).abs() + residual,
        samples,
    })
}

/// y·𝔓_t(iy) − ½ψ(1/4 + y/2) + ½log π
pub fn limit_bracket(ctx: &ScrewLineContext, t: f64, y: f64) -> Result<f64> {
    let p = ctx.frak_p(t, Complex64::new(0.0, y))?;
    let psi = digamma(Complex64::new(0.25 + 0.5 * y, 0.0))?.re;
    Ok(y * p.re - 0.5 * psi + 0.5 * ctx.screw.constants.log_pi)
}

/// lim_{y→∞} of [`limit_bracket`], which equals −g′(t). The bracket is sampled
/// at y = 50..400 and extrapolated in 1/y by a cubic through the four points.
pub fn special_value_limit(ctx: &ScrewLineContext, t: f64) -> Result<SpecialValueReport> {
    let t = t.abs();
    if t <= LIMIT_JUMP_DISTANCE {
        return Err(Error::Domain {
            function: "special_value_limit",
            detail: format!("t = {t} must exceed {LIMIT_JUMP_DISTANCE}"),
        });
    }
    if let Some((n, dist)) = ctx.screw.mangoldt.nearest_jump(t) {
        if dist < LIMIT_JUMP_DISTANCE {
            return Err(Error::JumpPoint {
                t,
                n,
                radius: LIMIT_JUMP_DISTANCE,
            });
        }
    }
    let mut samples = Vec::with_capacity(LIMIT_HEIGHTS.len());
    for &y in &LIMIT_HEIGHTS {
        samples.push((y, limit_bracket(ctx, t, y)?));
    }
    let u: Vec<f64> = samples.iter().map(|s| 1.0 / s.0).collect();
    let b: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let value = neville_at_zero(&u, &b);
    let lower = neville_at_zero(&u[1..], &b[1..]);
    let residuals: Vec<f64> = b.iter().map(|v| (v - value).abs()).collect();
    let monotone = residuals.windows(2).all(|w| w[1] <= w[0]);
    let warning = (!monotone).then(|| format!("extrapolation unstable: residuals {residuals:?} are not monotone"));
    Ok(SpecialValueReport {
        t,
        value,
        error: (value - lower).abs(),
        samples,
        residuals,
        warning,
    })
}
