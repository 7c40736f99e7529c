use screwline_core::analysis::{verify_transform_identity, verify_weil_identity, QuadratureSpec, TestFunction};
use screwline_core::screwfn::ScrewContext;
use screwline_core::screwline::{p_at_zero_extrapolated, special_value_limit, ScrewLineContext};
use screwline_core::zeros::{g_zero_sum, load_zeros, locate_zeros, norm_sq_zero_sum, ZeroTable};
use std::sync::OnceLock;

/// g(t) from a 30-digit evaluation of the defining zero-free closed form.
const G_REFERENCE: [(f64, f64); 5] = [
    (0.5, -0.04016258038208666),
    (1.0, -0.04400730523685253),
    (2.0, -0.05334112417185567),
    (3.0, -0.03970928889793797),
    (4.0, -0.03514093054519634),
];

fn ctx() -> &'static ScrewLineContext {
    static C: OnceLock<ScrewLineContext> = OnceLock::new();
    C.get_or_init(|| ScrewLineContext::new(ScrewContext::with_range(8.0).unwrap()))
}

#[test]
fn g_matches_high_precision_values() {
    for (t, g) in G_REFERENCE {
        assert!((ctx().screw.g(t).unwrap() - g).abs() < 1e-13, "t={t}");
    }
}

#[test]
fn value_at_origin_over_grid() {
    for (t, g) in G_REFERENCE {
        let r = p_at_zero_extrapolated(ctx(), t).unwrap();
        assert!((r.value + g).abs() < 1e-6, "t={t}: {} vs {}", r.value, -g);
    }
}

#[test]
fn limit_bracket_residuals_shrink() {
    let r = special_value_limit(ctx(), 1.0).unwrap();
    assert!(r.warning.is_none(), "{r:?}");
    assert!(r.residuals.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn line_norm_against_zero_sum() {
    let spec = QuadratureSpec::default();
    let table = ZeroTable::embedded();
    let quad = ctx().norm_sq_quad(2.0, &spec, Some(&table)).unwrap();
    let (sum, tail) = norm_sq_zero_sum(2.0, &table);
    assert!((quad.value - sum).abs() <= quad.total_error() + tail.bound);
    let (g_sum, _) = g_zero_sum(2.0, &table);
    assert!((sum - 2.0 * g_sum).abs() <= 1e-15);
}

#[test]
fn too_small_radius_is_tail_dominated() {
    let spec = QuadratureSpec {
        radius: 100.0,
        ..QuadratureSpec::default()
    };
    let e = ctx().norm_sq_quad(1.0, &spec, None).unwrap();
    assert!(e.tail_bound > 10.0 * e.quad_error);
    let target = -2.0 * G_REFERENCE[1].1;
    assert!((e.value - target).abs() / target > 1e-2);
}

#[test]
fn decay_bound_with_frozen_constant() {
    // max over [100, 10000] of |𝔖_1(z)|·z/log z, measured once and padded
    const C: f64 = 0.6;
    for k in 0..400 {
        let z = 100.0 * 100f64.powf(k as f64 / 399.0);
        let v = ctx().frak_s(1.0, z).unwrap().norm();
        assert!(v <= C * z.ln() / z, "z={z}: {v}");
    }
}

#[test]
fn verifiers_agree_and_detect_a_shifted_zero() {
    let table = ZeroTable::embedded();
    let spec = QuadratureSpec {
        radius: 1000.0,
        ..QuadratureSpec::default()
    };
    let psi = TestFunction::bump(1.5, 1.0, 1.0);
    let good = verify_weil_identity(ctx(), &psi, &table, &spec).unwrap();
    assert!(good.pass, "{good:#?}");
    let bad = verify_weil_identity(ctx(), &psi, &table.perturbed(0, 0.1).unwrap(), &spec).unwrap();
    assert!(!bad.pass);
    let phi = TestFunction::bump_derivative(2.0, 1.0, 1.0);
    let r = verify_transform_identity(ctx(), &phi, &table, &spec).unwrap();
    assert!(r.pass, "{r:#?}");
    assert!(r.paths[0].value <= r.ceiling);
}

#[test]
fn located_table_round_trips_through_a_file() {
    let table = locate_zeros(60.0, 1e-12).unwrap();
    assert_eq!(table.len(), 13);
    let dir = std::env::temp_dir().join(format!("screwline-zeros-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("zeros.txt");
    std::fs::write(&path, table.to_text()).unwrap();
    let back = load_zeros(&path).unwrap();
    assert_eq!(back.ordinates(), table.ordinates());
    std::fs::remove_dir_all(&dir).unwrap();
    let embedded = ZeroTable::embedded();
    for (a, b) in table.ordinates().iter().zip(embedded.ordinates()) {
        assert!((a - b).abs() < 1e-10);
    }
}
