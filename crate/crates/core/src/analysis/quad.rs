//! Deterministic adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Panels are refined in batches; every batch is evaluated in parallel and
//! collected in order, and totals are formed by fixed-order pairwise sums, so
//! results are identical for any thread count.

use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;
use num_complex::Complex64;
use rayon::prelude::*;
use std::ops::{Add, Mul, Sub};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Kronrod nodes on [−1, 1] in increasing order, with Kronrod and Gauss weights.
pub fn gauss_kronrod_rule() -> [(f64, f64, f64); 15] {
    let mut out = [(0.0, 0.0, 0.0); 15];
    for j in 0..7 {
        let wg = if j % 2 == 1 { WG[j / 2] } else { 0.0 };
        out[j] = (-XGK[j], WGK[j], wg);
        out[14 - j] = (XGK[j], WGK[j], wg);
    }
    out[7] = (0.0, WGK[7], WG[3]);
    out
}

/// Values the integrator can accumulate.
pub trait QuadValue: Copy + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
    fn sum_ordered(values: &[Self]) -> Self;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn sum_ordered(values: &[Self]) -> Self {
        pairwise_sum(values)
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn sum_ordered(values: &[Self]) -> Self {
        crate::numeric::pairwise_sum_complex(values)
    }
}

/// A real integrand carrying a nonnegative side quantity that is integrated
/// alongside it (typically an error density) without driving refinement.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Tracked {
    pub value: f64,
    pub aux: f64,
}

impl Add for Tracked {
    type Output = Tracked;
    fn add(self, o: Tracked) -> Tracked {
        Tracked {
            value: self.value + o.value,
            aux: self.aux + o.aux,
        }
    }
}

impl Sub for Tracked {
    type Output = Tracked;
    fn sub(self, o: Tracked) -> Tracked {
        Tracked {
            value: self.value - o.value,
            aux: self.aux - o.aux,
        }
    }
}

impl Mul<f64> for Tracked {
    type Output = Tracked;
    fn mul(self, k: f64) -> Tracked {
        Tracked {
            value: self.value * k,
            aux: self.aux * k,
        }
    }
}

impl QuadValue for Tracked {
    fn zero() -> Self {
        Tracked::default()
    }
    fn magnitude(&self) -> f64 {
        self.value.abs()
    }
    fn sum_ordered(values: &[Self]) -> Self {
        let v: Vec<f64> = values.iter().map(|x| x.value).collect();
        let a: Vec<f64> = values.iter().map(|x| x.aux).collect();
        Tracked {
            value: pairwise_sum(&v),
            aux: pairwise_sum(&a),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evaluations: usize,
    /// Panels narrower than this are never split again.
    pub min_width: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 0.0,
            rel_tol: 1e-10,
            max_evaluations: 2_000_000,
            min_width: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Panel<T> {
    pub a: f64,
    pub b: f64,
    pub value: T,
    pub error: f64,
    /// The estimate is at the rounding floor; splitting cannot improve it.
    pub at_roundoff: bool,
}

#[derive(Debug, Clone)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
    pub panels: Vec<Panel<T>>,
}

impl<T: QuadValue> QuadResult<T> {
    /// Value and error restricted to panels inside [lo, hi] (panel edges must align).
    pub fn partial(&self, lo: f64, hi: f64) -> (T, f64) {
        let sel: Vec<&Panel<T>> = self.panels.iter().filter(|p| p.a >= lo && p.b <= hi).collect();
        let vals: Vec<T> = sel.iter().map(|p| p.value).collect();
        let errs: Vec<f64> = sel.iter().map(|p| p.error).collect();
        (T::sum_ordered(&vals), pairwise_sum(&errs))
    }
}

fn gk15<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> Panel<T> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = T::zero();
    let mut g = T::zero();
    let mut abs_sum = 0.0;
    for (x, wk, wg) in gauss_kronrod_rule() {
        let v = f(c + h * x);
        k = k + v * wk;
        g = g + v * wg;
        abs_sum += wk * v.magnitude();
    }
    let value = k * h;
    let diff = ((k - g) * h).magnitude();
    let roundoff = 50.0 * f64::EPSILON * abs_sum * h.abs();
    Panel {
        a,
        b,
        value,
        error: diff + roundoff,
        at_roundoff: diff <= roundoff,
    }
}

/// Integrate f over [a, b], starting from panels split at `breakpoints`.
pub fn integrate<T, F>(f: F, a: f64, b: f64, breakpoints: &[f64], opts: &QuadOptions) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: Fn(f64) -> T + Sync,
{
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::Domain {
            function: "integrate",
            detail: format!("interval [{a}, {b}]"),
        });
    }
    if a == b {
        return Ok(QuadResult {
            value: T::zero(),
            error: 0.0,
            evaluations: 0,
            panels: Vec::new(),
        });
    }
    let mut cuts: Vec<f64> = breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();
    let mut edges = vec![a];
    edges.extend(cuts);
    edges.push(b);
    let initial: Vec<(f64, f64)> = edges.windows(2).map(|w| (w[0], w[1])).filter(|(x, y)| y > x).collect();
    let mut panels: Vec<Panel<T>> = initial.par_iter().map(|&(x, y)| gk15(&f, x, y)).collect();
    let mut evaluations = 15 * panels.len();

    loop {
        let values: Vec<T> = panels.iter().map(|p| p.value).collect();
        let errors: Vec<f64> = panels.iter().map(|p| p.error).collect();
        let value = T::sum_ordered(&values);
        let error = pairwise_sum(&errors);
        let target = opts.abs_tol.max(opts.rel_tol * value.magnitude());
        let splittable = |p: &Panel<T>| (p.b - p.a) > opts.min_width.max(4.0 * f64::EPSILON * p.a.abs().max(p.b.abs()));
        let fair = target / panels.len() as f64;
        let mut chosen: Vec<usize> = (0..panels.len())
            .filter(|&i| panels[i].error > fair && !panels[i].at_roundoff && splittable(&panels[i]))
            .collect();
        if error <= target || chosen.is_empty() {
            return Ok(QuadResult {
                value,
                error,
                evaluations,
                panels,
            });
        }
        if evaluations + 30 * chosen.len() > opts.max_evaluations {
            let worst = panels
                .iter()
                .max_by(|x, y| x.error.partial_cmp(&y.error).unwrap())
                .unwrap();
            return Err(Error::QuadratureNonConvergence {
                evaluations,
                error,
                worst_a: worst.a,
                worst_b: worst.b,
                worst_error: worst.error,
            });
        }
        // Split the worst half of the candidates first so effort tracks the error.
        if chosen.len() > 64 {
            chosen.sort_by(|&i, &j| panels[j].error.partial_cmp(&panels[i].error).unwrap().then(i.cmp(&j)));
            chosen.truncate(chosen.len() / 2);
            chosen.sort();
        }
        let halves: Vec<(f64, f64)> = chosen
            .iter()
            .flat_map(|&i| {
                let p = &panels[i];
                let m = 0.5 * (p.a + p.b);
                [(p.a, m), (m, p.b)]
            })
            .collect();
        let fresh: Vec<Panel<T>> = halves.par_iter().map(|&(x, y)| gk15(&f, x, y)).collect();
        evaluations += 15 * fresh.len();
        let mut next = Vec::with_capacity(panels.len() + chosen.len());
        let mut ci = 0;
        for (i, p) in panels.into_iter().enumerate() {
            if ci < chosen.len() && chosen[ci] == i {
                next.push(fresh[2 * ci]);
                next.push(fresh[2 * ci + 1]);
                ci += 1;
            } else {
                next.push(p);
            }
        }
        panels = next;
    }
}

/// ∫_a^b f with relative tolerance; returns (value, error estimate).
pub fn adaptive_quad<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64 + Sync,
{
    let opts = QuadOptions {
        rel_tol,
        ..QuadOptions::default()
    };
    let r = integrate(f, a, b, &[], &opts)?;
    Ok((r.value, r.error))
}
