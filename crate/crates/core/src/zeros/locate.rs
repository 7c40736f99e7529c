//! Zero location by sign changes of the real function A(z) = ξ(1/2 − iz).

use super::{smooth_zero_count, ZeroSource, ZeroTable};
use crate::error::{Error, Result};
use crate::specfun::{log_gamma, zeta};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Scan step for sign changes.
pub const SCAN_STEP: f64 = 0.05;
pub const MAX_HEIGHT: f64 = 1.0e4;

/// A(z) = mantissa · e^{log_scale} for real z; the split keeps A
/// representable where Γ(s/2) underflows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledXi {
    pub mantissa: f64,
    pub log_scale: f64,
}

impl ScaledXi {
    pub fn value(&self) -> f64 {
        self.mantissa * self.log_scale.exp()
    }
}

/// ξ(1/2 − iz) at real z, in scaled form.
pub fn completed_zeta_scaled(z: f64) -> Result<ScaledXi> {
    let s = Complex64::new(0.5, -z);
    let lg = log_gamma(s / 2.0)?;
    let half_ln_pi = 0.5 * PI.ln();
    // π^{−s/2}Γ(s/2) = exp(log_scale) · e^{iφ}
    let phase = lg.im + z * half_ln_pi;
    let log_scale = lg.re - 0.5 * half_ln_pi;
    let zt = zeta(s)?;
    let rotated = Complex64::from_polar(1.0, phase) * zt;
    Ok(ScaledXi {
        mantissa: -0.5 * (z * z + 0.25) * rotated.re,
        log_scale,
    })
}

/// Sign-carrying quantity with the zeros of A: Re(e^{iφ}ζ(1/2 − iz)).
fn hardy(z: f64) -> Result<f64> {
    let s = Complex64::new(0.5, -z);
    let lg = log_gamma(s / 2.0)?;
    let phase = lg.im + z * 0.5 * PI.ln();
    Ok((Complex64::from_polar(1.0, phase) * zeta(s)?).re)
}

#[derive(Debug, Clone, Serialize)]
pub struct LocateReport {
    pub table: ZeroTable,
    /// Smooth count θ(t_max)/π + 1.
    pub expected_count: f64,
    pub warnings: Vec<String>,
}

pub fn locate_zeros(t_max: f64, refine_tol: f64) -> Result<ZeroTable> {
    locate_zeros_detailed(t_max, refine_tol).map(|r| r.table)
}

fn bisect(mut lo: f64, mut hi: f64, mut f_lo: f64, tol: f64) -> Result<f64> {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = hardy(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Sign changes of `values` sampled at `grid`, refined to `tol`.
fn roots_on_grid(grid: &[f64], values: &[f64], tol: f64) -> Result<Vec<f64>> {
    let brackets: Vec<usize> = (0..grid.len() - 1)
        .filter(|&k| (values[k] > 0.0) != (values[k + 1] > 0.0))
        .collect();
    brackets
        .par_iter()
        .map(|&k| bisect(grid[k], grid[k + 1], values[k], tol))
        .collect()
}

/// All zeros with 0 < γ ≤ t_max.
pub fn locate_zeros_detailed(t_max: f64, refine_tol: f64) -> Result<LocateReport> {
    if !(t_max.is_finite() && t_max <= MAX_HEIGHT) {
        return Err(Error::Domain {
            function: "locate_zeros",
            detail: format!("t_max = {t_max} exceeds {MAX_HEIGHT}"),
        });
    }
    if !(refine_tol > 0.0) {
        return Err(Error::Domain {
            function: "locate_zeros",
            detail: format!("refine_tol = {refine_tol} must be positive"),
        });
    }
    if t_max <= 0.0 {
        return Ok(LocateReport {
            table: ZeroTable::new(Vec::new(), None, ZeroSource::Located)?,
            expected_count: 0.0,
            warnings: Vec::new(),
        });
    }
    let n_steps = (t_max / SCAN_STEP).ceil() as usize;
    let grid: Vec<f64> = (0..=n_steps).map(|k| (k as f64 * SCAN_STEP).min(t_max)).collect();
    let values: Vec<f64> = grid.par_iter().map(|&z| hardy(z)).collect::<Result<_>>()?;
    let mut roots = roots_on_grid(&grid, &values, refine_tol)?;

    // A local minimum of |A| without a sign change may hide a close pair.
    let suspects: Vec<usize> = (1..grid.len() - 1)
        .filter(|&k| {
            let (a, b, c) = (values[k - 1], values[k], values[k + 1]);
            (a > 0.0) == (b > 0.0) && (b > 0.0) == (c > 0.0) && b.abs() < a.abs() && b.abs() < c.abs()
        })
        .collect();
    let extra: Vec<Vec<f64>> = suspects
        .par_iter()
        .map(|&k| {
            let sub = 64;
            let lo = grid[k - 1];
            let hi = grid[k + 1];
            let fine: Vec<f64> = (0..=sub).map(|j| lo + (hi - lo) * j as f64 / sub as f64).collect();
            let vals: Vec<f64> = fine.iter().map(|&z| hardy(z)).collect::<Result<_>>()?;
            roots_on_grid(&fine, &vals, refine_tol)
        })
        .collect::<Result<_>>()?;
    for r in extra.into_iter().flatten() {
        roots.push(r);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() <= 2.0 * refine_tol);

    let expected = smooth_zero_count(t_max);
    let mut warnings = Vec::new();
    if (roots.len() as f64) < expected - 2.0 {
        warnings.push(format!(
            "found {} zeros below {t_max} but the zero density predicts {expected:.1}; a close pair or multiple zero may have been missed",
            roots.len()
        ));
    }
    let table = ZeroTable {
        ordinates: roots,
        multiplicities: Vec::new(),
        source: ZeroSource::Located,
    };
    let table = ZeroTable {
        multiplicities: vec![1; table.ordinates.len()],
        ..table
    };
    if let Err(e) = table.validate() {
        warnings.push(format!("located table failed validation: {e}"));
    }
    Ok(LocateReport {
        table,
        expected_count: expected,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zeros() {
        let t = locate_zeros(15.0, 1e-12).unwrap();
        assert_eq!(t.len(), 1);
        assert!((t.ordinates()[0] - 14.134725141734693).abs() < 1e-9);
        let t = locate_zeros(30.0, 1e-10).unwrap();
        let expect = [14.134725141734693, 21.022039638771554, 25.010857580145688];
        assert_eq!(t.len(), 3);
        for (g, e) in t.ordinates().iter().zip(expect) {
            assert!((g - e).abs() < 1e-9);
        }
        assert!(locate_zeros(0.0, 1e-10).unwrap().is_empty());
    }

    #[test]
    fn scaled_xi_is_real_and_matches_direct_product() {
        for &z in &[0.0, 3.0, 14.0, 40.0] {
            let s = Complex64::new(0.5, -z);
            let direct = 0.5 * s * (s - 1.0) * (-(s / 2.0) * PI.ln()).exp() * log_gamma(s / 2.0).unwrap().exp() * zeta(s).unwrap();
            let v = completed_zeta_scaled(z).unwrap().value();
            assert!((v - direct.re).abs() < 1e-12 * direct.norm().max(1e-300), "z={z}");
            assert!(direct.im.abs() < 1e-12 * direct.norm().max(1e-300));
        }
        // ξ(1/2) ≈ 0.4971207781
        assert!((completed_zeta_scaled(0.0).unwrap().value() - 0.497_120_778_188_314_1).abs() < 1e-12);
        // underflows in linear space but not in scaled form
        let far = completed_zeta_scaled(3000.0).unwrap();
        assert!(far.log_scale < -2000.0 && far.mantissa.is_finite());
    }
}
