//! Three-way checks of the two norm identities. Each identity is evaluated by
//! L² quadrature of 𝒫̂, by the double integral against the kernel G_g, and by
//! a sum over zeros; the three paths share no code below the special functions.

use super::{Estimate, QuadratureSpec, TailModel, TestFunction};
use crate::error::{Error, Result};
use crate::screwline::{norm_sq_p_hat, p_hat_norm_ceiling, ScrewLineContext};
use crate::zeros::{gg_form_zero_sum, weil_form, ZeroTable};
use serde::Serialize;

/// Relative gap allowed between two paths.
pub const RELATIVE_GAP: f64 = 1e-2;

#[derive(Debug, Clone, Serialize)]
pub struct PathValue {
    pub name: &'static str,
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairCheck {
    pub first: &'static str,
    pub second: &'static str,
    pub gap: f64,
    pub budget: f64,
    pub relative_gap: f64,
    pub within_budget: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub identity: &'static str,
    pub test_function: TestFunction,
    pub zeros: usize,
    pub paths: Vec<PathValue>,
    pub pairs: Vec<PairCheck>,
    /// (∫|φ|·‖𝔖_t‖ dt)², an upper bound for the quadrature path.
    pub ceiling: f64,
    pub pass: bool,
}

fn path(name: &'static str, e: &Estimate<f64>) -> PathValue {
    PathValue {
        name,
        value: e.value,
        error: e.total_error(),
    }
}

fn compare(a: &PathValue, b: &PathValue) -> PairCheck {
    let gap = (a.value - b.value).abs();
    let budget = a.error + b.error;
    let scale = a.value.abs().max(b.value.abs());
    let relative_gap = if scale == 0.0 { 0.0 } else { gap / scale };
    let within_budget = gap <= budget;
    PairCheck {
        first: a.name,
        second: b.name,
        gap,
        budget,
        relative_gap,
        within_budget,
        pass: within_budget && relative_gap <= RELATIVE_GAP,
    }
}

fn report(identity: &'static str, phi: TestFunction, table: &ZeroTable, paths: Vec<PathValue>, ceiling: f64) -> VerificationReport {
    let mut pairs = Vec::new();
    for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            pairs.push(compare(&paths[i], &paths[j]));
        }
    }
    let pass = pairs.iter().all(|p| p.pass);
    VerificationReport {
        identity,
        test_function: phi,
        zeros: table.len(),
        paths,
        pairs,
        ceiling,
        pass,
    }
}

/// The quadrature path with the decay model that fits zero-mean test functions.
fn transform_spec(spec: &QuadratureSpec) -> QuadratureSpec {
    let mut s = *spec;
    if s.tail_model == TailModel::LogSqOverT {
        s.tail_model = TailModel::InverseSquare;
    }
    s
}

fn spectral(value: (f64, crate::zeros::TailBound)) -> Estimate<f64> {
    Estimate {
        value: value.0,
        quad_error: 0.0,
        tail_bound: 0.0,
        zero_trunc_bound: value.1.bound,
    }
}

/// ‖𝒫̂_φ‖² = ⟨φ, φ⟩_{G_g} = Σ_γ |φ̂(γ) − φ̂(0)|²/γ² for zero-mean φ.
pub fn verify_transform_identity(
    ctx: &ScrewLineContext,
    phi: &TestFunction,
    table: &ZeroTable,
    spec: &QuadratureSpec,
) -> Result<VerificationReport> {
    phi.validate()?;
    if phi.integral().abs() > 1e-14 * phi.amplitude.abs() {
        return Err(Error::Validation(format!("test function {phi:?} must have zero mean")));
    }
    let ceiling = p_hat_norm_ceiling(ctx, phi)?.powi(2);
    let herm_tol = spec.rel_tol * ceiling.max(f64::MIN_POSITIVE);
    let (quad, (kernel, zeros)) = rayon::join(
        || norm_sq_p_hat(ctx, phi, &transform_spec(spec), Some(table)),
        || {
            rayon::join(
                || ctx.screw.herm_form_gg(phi, phi, herm_tol),
                || gg_form_zero_sum(&|z| phi.fourier(z.into()), table),
            )
        },
    );
    let paths = vec![
        path("transform_quadrature", &quad?),
        path("kernel_double_integral", &kernel?),
        path("zero_sum", &spectral(zeros?)),
    ];
    Ok(report("transform_norm", *phi, table, paths, ceiling))
}

/// ‖𝒫̂_{Dψ}‖² = ⟨ψ, ψ⟩_W = ⟨Dψ, Dψ⟩_{G_g} for a bump ψ.
pub fn verify_weil_identity(
    ctx: &ScrewLineContext,
    psi: &TestFunction,
    table: &ZeroTable,
    spec: &QuadratureSpec,
) -> Result<VerificationReport> {
    psi.validate()?;
    let dpsi = psi
        .derivative()
        .ok_or_else(|| Error::Validation(format!("{psi:?} has no derivative in the bump family")))?;
    let ceiling = p_hat_norm_ceiling(ctx, &dpsi)?.powi(2);
    let herm_tol = spec.rel_tol * ceiling.max(f64::MIN_POSITIVE);
    let (quad, (weil, kernel)) = rayon::join(
        || norm_sq_p_hat(ctx, &dpsi, &transform_spec(spec), Some(table)),
        || {
            rayon::join(
                || weil_form(&|z| psi.fourier(z.into()), table),
                || ctx.screw.herm_form_gg(&dpsi, &dpsi, herm_tol),
            )
        },
    );
    let paths = vec![
        path("transform_quadrature", &quad?),
        path("weil_form", &spectral(weil?)),
        path("kernel_double_integral", &kernel?),
    ];
    Ok(report("weil_norm", *psi, table, paths, ceiling))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_check_logic() {
        let a = PathValue { name: "a", value: 1.0, error: 0.01 };
        let b = PathValue { name: "b", value: 1.015, error: 0.01 };
        let c = compare(&a, &b);
        assert!(c.within_budget && !c.pass);
        let z = PathValue { name: "z", value: 0.0, error: 0.0 };
        assert!(compare(&z, &z).pass);
    }

    #[test]
    fn zero_function_gives_zero_on_every_path() {
        let ctx = ScrewLineContext::new(crate::screwfn::ScrewContext::with_range(6.0).unwrap());
        let table = ZeroTable::embedded();
        let spec = QuadratureSpec { radius: 100.0, ..QuadratureSpec::default() };
        let r = verify_transform_identity(&ctx, &TestFunction::bump_derivative(2.0, 1.0, 0.0), &table, &spec).unwrap();
        assert!(r.pass && r.paths.iter().all(|p| p.value == 0.0));
        let r = verify_weil_identity(&ctx, &TestFunction::bump(1.5, 1.0, 0.0), &table, &spec).unwrap();
        assert!(r.pass && r.paths.iter().all(|p| p.value == 0.0));
    }

    #[test]
    fn transform_identity_requires_zero_mean() {
        let ctx = ScrewLineContext::new(crate::screwfn::ScrewContext::with_range(6.0).unwrap());
        let spec = QuadratureSpec { radius: 100.0, ..QuadratureSpec::default() };
        let r = verify_transform_identity(&ctx, &TestFunction::bump(2.0, 1.0, 1.0), &ZeroTable::embedded(), &spec);
        assert!(matches!(r, Err(Error::Validation(_))));
    }
}
