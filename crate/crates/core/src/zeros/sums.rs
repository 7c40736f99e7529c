//! Sums over the zeros ±γ and their truncation bounds.

use super::{TailBound, ZeroTable};
use crate::error::{Error, Result};
use crate::numeric::{expm1_complex, pairwise_sum, pairwise_sum_complex};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Safety factor on density-based tail integrals.
const SAFETY: f64 = 1.2;
/// Zeros by which the true count above H may exceed the smooth count.
const COUNT_SLACK: f64 = 3.0;
/// Closest approach of z to a tabulated ordinate in [`p_t_zero_sum`].
pub const POLE_RADIUS: f64 = 1e-8;

/// ∫_H^∞ γ^{−2} dN(γ) with dN = (1/2π) log(γ/2π) dγ.
fn density_inv_sq(h: f64) -> f64 {
    ((h / (2.0 * PI)).ln() + 1.0) / (2.0 * PI * h)
}

/// ∫_H^∞ γ^{−4} dN(γ).
fn density_inv_fourth(h: f64) -> f64 {
    ((h / (2.0 * PI)).ln() / (3.0 * h.powi(3)) + 1.0 / (9.0 * h.powi(3))) / (2.0 * PI)
}

/// Tail height: the density integrals are only used above the first zero.
fn tail_height(table: &ZeroTable) -> f64 {
    table.height().max(super::FIRST_ORDINATE)
}

/// Σ over ±γ of m(1 − cos γt)/γ², which equals −g(t).
pub fn g_zero_sum(t: f64, table: &ZeroTable) -> (f64, TailBound) {
    let terms: Vec<f64> = table
        .ordinates()
        .iter()
        .zip(table.multiplicities())
        .map(|(&g, &m)| {
            let s = (0.5 * g * t).sin();
            // 1 − cos x = 2 sin²(x/2); factor 2 for the mirror zero
            4.0 * m as f64 * s * s / (g * g)
        })
        .collect();
    let h = tail_height(table);
    let bound = if t == 0.0 {
        0.0
    } else {
        SAFETY * 4.0 * density_inv_sq(h) + COUNT_SLACK * 4.0 / (h * h)
    };
    (
        pairwise_sum(&terms),
        TailBound {
            truncation_height: h,
            bound,
        },
    )
}

/// Σ over ±γ of m|e^{iγt} − 1|²/γ², which equals ‖𝔖_t‖².
pub fn norm_sq_zero_sum(t: f64, table: &ZeroTable) -> (f64, TailBound) {
    let terms: Vec<f64> = table
        .ordinates()
        .iter()
        .zip(table.multiplicities())
        .map(|(&g, &m)| {
            let up = expm1_complex(Complex64::new(0.0, g * t)).norm_sqr();
            let down = expm1_complex(Complex64::new(0.0, -g * t)).norm_sqr();
            m as f64 * (up + down) / (g * g)
        })
        .collect();
    let h = tail_height(table);
    let bound = if t == 0.0 {
        0.0
    } else {
        SAFETY * 8.0 * density_inv_sq(h) + COUNT_SLACK * 8.0 / (h * h)
    };
    (
        pairwise_sum(&terms),
        TailBound {
            truncation_height: h,
            bound,
        },
    )
}

/// P_t(z) = Σ over ±γ of m (e^{iγt} − 1)/γ · 1/(z − γ); even in t.
pub fn p_t_zero_sum(t: f64, z: Complex64, table: &ZeroTable) -> Result<(Complex64, TailBound)> {
    let t = t.abs();
    for &g in table.ordinates() {
        for gamma in [g, -g] {
            if (z - gamma).norm() < POLE_RADIUS {
                return Err(Error::NearZero {
                    z: format!("{z}"),
                    ordinate: gamma,
                    radius: POLE_RADIUS,
                });
            }
        }
    }
    let terms: Vec<Complex64> = table
        .ordinates()
        .iter()
        .zip(table.multiplicities())
        .map(|(&g, &m)| {
            let up = expm1_complex(Complex64::new(0.0, g * t)) / (g * (z - g));
            let down = expm1_complex(Complex64::new(0.0, -g * t)) / (-g * (z + g));
            (up + down) * m as f64
        })
        .collect();
    let h = tail_height(table);
    let bound = if t == 0.0 {
        0.0
    } else if z.norm() >= 0.5 * h {
        f64::INFINITY
    } else {
        let stretch = h / (h - z.norm());
        SAFETY * 4.0 * stretch * density_inv_sq(h) + COUNT_SLACK * 4.0 * stretch / (h * h)
    };
    Ok((
        pairwise_sum_complex(&terms),
        TailBound {
            truncation_height: h,
            bound,
        },
    ))
}

/// A transform ψ ↦ ψ̂ evaluated at real arguments.
pub type TransformEvaluator<'a> = dyn Fn(f64) -> Result<Complex64> + Sync + 'a;

/// Zeros are evaluated in blocks of this size.
const BLOCK: usize = 64;
/// A block is negligible when its largest term falls below this fraction of the running total.
const NEGLIGIBLE: f64 = 1e-22;

struct SpectralTerms {
    sum: f64,
    /// Height of the last zero evaluated with the transform.
    evaluated_height: f64,
    /// max γ²|ψ̂(±γ)| over the last evaluated block
    envelope: f64,
}

/// Shared driver for the two spectral forms. `term(γ, ψ̂(γ), ψ̂(−γ))` gives the
/// contribution of the pair; evaluation stops once whole blocks are negligible.
fn spectral_terms(
    table: &ZeroTable,
    transform: &TransformEvaluator<'_>,
    term: impl Fn(f64, Complex64, Complex64) -> f64 + Sync,
) -> Result<SpectralTerms> {
    let ords = table.ordinates();
    let mults = table.multiplicities();
    let mut partial = Vec::new();
    let mut evaluated_height = 0.0;
    let mut envelope = 0.0;
    let mut start = 0;
    while start < ords.len() {
        let end = (start + BLOCK).min(ords.len());
        let block: Vec<(f64, f64)> = (start..end)
            .into_par_iter()
            .map(|k| {
                let g = ords[k];
                let up = transform(g)?;
                let down = transform(-g)?;
                let env = g * g * up.norm().max(down.norm());
                Ok((mults[k] as f64 * term(g, up, down), env))
            })
            .collect::<Result<_>>()?;
        let block_max = block.iter().map(|b| b.0.abs()).fold(0.0, f64::max);
        envelope = block.iter().map(|b| b.1).fold(0.0, f64::max);
        partial.extend(block.iter().map(|b| b.0));
        evaluated_height = ords[end - 1];
        start = end;
        let total = pairwise_sum(&partial).abs();
        if block_max <= NEGLIGIBLE * total && start < ords.len() {
            break;
        }
    }
    Ok(SpectralTerms {
        sum: pairwise_sum(&partial),
        evaluated_height,
        envelope,
    })
}

/// Weil's form Σ over ±γ of m|ψ̂(γ)|² for a real-zero table.
pub fn weil_form(transform: &TransformEvaluator<'_>, table: &ZeroTable) -> Result<(f64, TailBound)> {
    if table.is_empty() {
        return Ok((
            0.0,
            TailBound {
                truncation_height: 0.0,
                bound: 0.0,
            },
        ));
    }
    let r = spectral_terms(table, transform, |_, up, down| up.norm_sqr() + down.norm_sqr())?;
    // |ψ̂(γ)| ≤ C/γ² beyond the last evaluated zero
    let h = r.evaluated_height.max(super::FIRST_ORDINATE);
    let c2 = r.envelope * r.envelope;
    let bound = SAFETY * 2.0 * c2 * density_inv_fourth(h) + COUNT_SLACK * 2.0 * c2 / h.powi(4);
    Ok((
        r.sum,
        TailBound {
            truncation_height: h,
            bound,
        },
    ))
}

/// Σ over ±γ of m|(φ̂(γ) − φ̂(0))/γ|².
pub fn gg_form_zero_sum(transform: &TransformEvaluator<'_>, table: &ZeroTable) -> Result<(f64, TailBound)> {
    if table.is_empty() {
        return Ok((
            0.0,
            TailBound {
                truncation_height: 0.0,
                bound: 0.0,
            },
        ));
    }
    let at_zero = transform(0.0)?;
    let r = spectral_terms(table, transform, |g, up, down| {
        ((up - at_zero).norm_sqr() + (down - at_zero).norm_sqr()) / (g * g)
    })?;
    // Zeros above the evaluated range contribute |φ̂(0)|²/γ² each, up to the
    // envelope correction.
    let a0 = at_zero.norm();
    let remaining: Vec<f64> = table
        .ordinates()
        .iter()
        .zip(table.multiplicities())
        .filter(|(&g, _)| g > r.evaluated_height)
        .map(|(&g, &m)| 2.0 * m as f64 * a0 * a0 / (g * g))
        .collect();
    let h_eval = r.evaluated_height.max(super::FIRST_ORDINATE);
    let h = tail_height(table);
    let c = r.envelope;
    // cross terms of the skipped zeros: |φ̂(γ)|² + 2|φ̂(0)||φ̂(γ)| per mirror pair
    let skipped = 2.0 * SAFETY * (c * c * density_inv_fourth(h_eval) / (h_eval * h_eval) + 2.0 * a0 * c * density_inv_fourth(h_eval))
        + COUNT_SLACK * 2.0 * (c * c / h_eval.powi(6) + 2.0 * a0 * c / h_eval.powi(4));
    // beyond the table: (|φ̂(0)| + C/γ²)² / γ² per zero, twice for the mirror
    let beyond = 2.0 * SAFETY * (a0 * a0 * density_inv_sq(h) + 2.0 * a0 * c * density_inv_fourth(h) + c * c * density_inv_fourth(h) / (h * h))
        + COUNT_SLACK * 2.0 * (a0 + c / (h * h)).powi(2) / (h * h);
    Ok((
        r.sum + pairwise_sum(&remaining),
        TailBound {
            truncation_height: h,
            bound: skipped + beyond,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> ZeroTable {
        ZeroTable::embedded()
    }

    #[test]
    fn sums_vanish_at_zero() {
        let t = table();
        assert_eq!(g_zero_sum(0.0, &t).0, 0.0);
        assert_eq!(norm_sq_zero_sum(0.0, &t).0, 0.0);
        assert_eq!(p_t_zero_sum(0.0, Complex64::new(0.0, 3.0), &t).unwrap().0, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn norm_is_twice_g_sum_independently() {
        let t = table();
        for &s in &[1.0, 2.0, 3.0] {
            let a = norm_sq_zero_sum(s, &t).0;
            let b = 2.0 * g_zero_sum(s, &t).0;
            assert!((a - b).abs() < 1e-15, "{a} vs {b}");
        }
    }

    #[test]
    fn even_in_t() {
        let t = table();
        assert_eq!(g_zero_sum(1.3, &t).0, g_zero_sum(-1.3, &t).0);
        let z = Complex64::new(1.0, 1.0);
        assert_eq!(p_t_zero_sum(1.3, z, &t).unwrap().0, p_t_zero_sum(-1.3, z, &t).unwrap().0);
    }

    #[test]
    fn partial_sums_respect_tail_bound() {
        let full = table();
        for &s in &[1.0, 2.0, 3.0] {
            let (small, tb) = g_zero_sum(s, &full.truncated(50));
            let (big, _) = g_zero_sum(s, &full);
            assert!(big >= small);
            assert!(big - small <= tb.bound, "t={s}");
            let coeff_bound: f64 = full.ordinates().iter().map(|g| 4.0 / (g * g)).sum();
            assert!(norm_sq_zero_sum(s, &full).0 <= 2.0 * coeff_bound);
        }
    }

    #[test]
    fn pole_proximity() {
        let t = table();
        let z = Complex64::new(t.ordinates()[0] + 1e-9, 0.0);
        assert!(matches!(p_t_zero_sum(1.0, z, &t), Err(Error::NearZero { .. })));
    }

    #[test]
    fn weil_form_basics() {
        let t = table();
        let zero = |_: f64| -> Result<Complex64> { Ok(Complex64::new(0.0, 0.0)) };
        assert_eq!(weil_form(&zero, &t).unwrap().0, 0.0);
        let decaying = |x: f64| -> Result<Complex64> { Ok(Complex64::new((-x.abs()).exp(), 0.0)) };
        let (v, _) = weil_form(&decaying, &t).unwrap();
        let direct: f64 = t.ordinates().iter().map(|g| 2.0 * (-2.0 * g).exp()).sum();
        assert!((v - direct).abs() < 1e-15 * direct);
    }
}
