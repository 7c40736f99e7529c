use crate::output::{Report, Row, Value};
use crate::{Failure, Session, Which};
use num_complex::Complex64;
use screwline_core::analysis::{verify_transform_identity, verify_weil_identity, TestFunction, VerificationReport};
use screwline_core::screwline::{p_at_zero_extrapolated, special_value_limit};
use screwline_core::zeros::{g_zero_sum, p_t_zero_sum};

const ORIGIN_TOL: f64 = 1e-6;
const LIMIT_TOL: f64 = 1e-3;
const NORM_REL: f64 = 1e-2;

fn row(check: &str, case: String, value: f64, target: f64, budget: f64, pass: bool) -> Row {
    Row(vec![
        Value::Text(check.into()),
        Value::Text(case),
        Value::Num(value),
        Value::Num(target),
        Value::Num((value - target).abs()),
        Value::Num(budget),
        Value::Bool(pass),
    ])
}

fn origin_value(s: &Session, r: &mut Report) -> Result<(), Failure> {
    for t in s.t_values(&[0.5, 1.0, 2.0, 4.0]) {
        let e = p_at_zero_extrapolated(&s.line, t)?;
        let target = -s.line.screw.g(t)?;
        let pass = (e.value - target).abs() <= ORIGIN_TOL;
        r.rows.push(row("origin-value", format!("t={t}"), e.value, target, ORIGIN_TOL, pass));
    }
    Ok(())
}

fn limit(s: &Session, r: &mut Report) -> Result<(), Failure> {
    for t in s.t_values(&[1.0, 2.5]) {
        let e = special_value_limit(&s.line, t)?;
        if let Some(w) = &e.warning {
            r.notes.push(format!("t={t}: {w}"));
        }
        let target = -s.line.screw.g_prime(t)?;
        let pass = (e.value - target).abs() <= LIMIT_TOL;
        r.rows.push(row("limit", format!("t={t}"), e.value, target, LIMIT_TOL, pass));
    }
    Ok(())
}

fn table_note(s: &Session, r: &mut Report) {
    if s.config.zeros.is_none() {
        let (_, tail) = g_zero_sum(1.0, &s.table);
        r.notes.push(format!(
            "embedded table: {} zeros up to height {:.1}; implied tail bound on zero sums about {:.1e}",
            s.table.len(),
            s.table.height(),
            tail.bound
        ));
    }
}

fn zero_sum_p(s: &Session, r: &mut Report) -> Result<(), Failure> {
    for t in s.t_values(&[1.0, 2.0]) {
        for z in [Complex64::new(0.0, 2.0), Complex64::new(0.0, 3.0), Complex64::new(1.0, 1.0)] {
            let closed = s.line.frak_p(t, z)?;
            let (sum, tail) = p_t_zero_sum(t, z, &s.table)?;
            let gap = (closed - sum).norm();
            r.rows.push(Row(vec![
                Value::Text("zero-sum-p".into()),
                Value::Text(format!("t={t} z={z}")),
                Value::Num(closed.norm()),
                Value::Num(sum.norm()),
                Value::Num(gap),
                Value::Num(tail.bound),
                Value::Bool(gap <= tail.bound),
            ]));
        }
    }
    table_note(s, r);
    Ok(())
}

fn zero_sum_g(s: &Session, r: &mut Report) -> Result<(), Failure> {
    for t in s.t_values(&[1.0, 2.0, 3.0]) {
        let (sum, tail) = g_zero_sum(t, &s.table);
        let target = -s.line.screw.g(t)?;
        let pass = (sum - target).abs() <= tail.bound;
        r.rows.push(row("zero-sum-g", format!("t={t}"), sum, target, tail.bound, pass));
    }
    table_note(s, r);
    Ok(())
}

fn norm(s: &Session, r: &mut Report) -> Result<(), Failure> {
    let spec = s.spec();
    for t in s.t_values(&[1.0, 2.0]) {
        let e = s.line.norm_sq_quad(t, &spec, Some(&s.table))?;
        let target = -2.0 * s.line.screw.g(t)?;
        let gap = (e.value - target).abs();
        let pass = gap <= e.total_error() && gap <= NORM_REL * target.abs();
        if !pass && e.tail_bound > e.quad_error {
            r.notes.push(format!(
                "t={t}: tail bound {:.2e} dominates quadrature error {:.2e}; increase --radius (now {})",
                e.tail_bound, e.quad_error, spec.radius
            ));
        }
        r.rows.push(row("norm", format!("t={t}"), e.value, target, e.total_error(), pass));
    }
    Ok(())
}

fn three_way(r: &mut Report, check: &str, v: VerificationReport) {
    for p in &v.pairs {
        let first = v.paths.iter().find(|x| x.name == p.first).unwrap();
        let second = v.paths.iter().find(|x| x.name == p.second).unwrap();
        r.rows.push(row(check, format!("{} vs {}", p.first, p.second), first.value, second.value, p.budget, p.pass));
    }
    r.details.push(serde_json::to_value(&v).unwrap());
}

fn transform_norm(s: &Session, r: &mut Report) -> Result<(), Failure> {
    let phi = TestFunction::bump_derivative(2.0, 1.0, 1.0);
    three_way(r, "transform-norm", verify_transform_identity(&s.line, &phi, &s.table, &s.spec())?);
    table_note(s, r);
    Ok(())
}

fn weil_norm(s: &Session, r: &mut Report) -> Result<(), Failure> {
    let psi = TestFunction::bump(1.5, 1.0, 1.0);
    three_way(r, "weil-norm", verify_weil_identity(&s.line, &psi, &s.table, &s.spec())?);
    table_note(s, r);
    Ok(())
}

pub fn run(s: &Session, which: Which) -> Result<Report, Failure> {
    let mut r = Report::new("verify", &["check", "case", "value", "target", "gap", "budget", "pass"]);
    let all = which == Which::All;
    if all || which == Which::OriginValue {
        origin_value(s, &mut r)?;
    }
    if all || which == Which::Limit {
        limit(s, &mut r)?;
    }
    if all || which == Which::ZeroSumP {
        zero_sum_p(s, &mut r)?;
    }
    if all || which == Which::ZeroSumG {
        zero_sum_g(s, &mut r)?;
    }
    if all || which == Which::Norm {
        norm(s, &mut r)?;
    }
    if all || which == Which::TransformNorm {
        transform_norm(s, &mut r)?;
    }
    if all || which == Which::WeilNorm {
        weil_norm(s, &mut r)?;
    }
    r.notes.dedup();
    r.pass = Some(r.rows.iter().all(|row| matches!(row.0.last(), Some(Value::Bool(true)))));
    Ok(r)
}
