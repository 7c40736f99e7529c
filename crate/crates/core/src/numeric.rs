//! Small numerical helpers shared across modules: reproducible summation and
//! cancellation-free forms of e^u − 1.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Fixed-order pairwise summation. The result depends only on the order of
/// `values`, never on thread count.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

pub fn pairwise_sum_complex(values: &[Complex64]) -> Complex64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum_complex(&values[..mid]) + pairwise_sum_complex(&values[mid..])
}

/// Neumaier compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// e^u − 1 without cancellation for small |u|.
pub fn expm1_complex(u: Complex64) -> Complex64 {
    let (s, c) = u.im.sin_cos();
    let half_sin = (0.5 * u.im).sin();
    // e^a cos b − 1 = expm1(a) cos b − 2 sin²(b/2)
    let re = u.re.exp_m1() * c - 2.0 * half_sin * half_sin;
    let im = u.re.exp() * s;
    Complex64::new(re, im)
}

/// (e^u − 1)/u, equal to 1 at u = 0.
pub fn expm1_over(u: Complex64) -> Complex64 {
    if u.norm() < 1e-3 {
        // Taylor series; six terms leave an error below 1e-20.
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..=7 {
            term = term * u / k as f64;
            sum += term;
        }
        sum
    } else {
        expm1_complex(u) / u
    }
}

/// (e^{izτ} − 1)/(iz): the building block of every oscillatory term,
/// continuous through z = 0 where it equals τ.
pub fn osc_kernel(z: Complex64, tau: f64) -> Complex64 {
    let u = Complex64::i() * z * tau;
    expm1_over(u) * tau
}

/// cot(πs) evaluated without overflow for large |Im s|.
pub fn cot_pi(s: Complex64) -> Complex64 {
    let a = 2.0 * PI * s.re;
    let b = 2.0 * PI * s.im;
    // cot(x+iy) = (sin 2x − i sinh 2y)/(cosh 2y − cos 2x), divided through by cosh 2y.
    let e = (-b.abs()).exp();
    let e2 = e * e;
    let sech = 2.0 * e / (1.0 + e2);
    let tanh = b.signum() * (1.0 - e2) / (1.0 + e2);
    let den = 1.0 - a.cos() * sech;
    Complex64::new(a.sin() * sech / den, -tanh / den)
}

pub fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_small_input() {
        let v: Vec<f64> = (1..=100).map(|k| 1.0 / k as f64).collect();
        let naive: f64 = v.iter().sum();
        assert!((pairwise_sum(&v) - naive).abs() < 1e-13);
    }

    #[test]
    fn expm1_over_is_continuous_at_threshold() {
        let below = expm1_over(Complex64::new(0.0, 0.999e-3));
        let above = expm1_over(Complex64::new(0.0, 1.001e-3));
        assert!((below - above).norm() < 2e-6);
        let u = Complex64::new(0.3, -0.7);
        assert!((expm1_over(u) - (u.exp() - 1.0) / u).norm() < 1e-15);
    }

    #[test]
    fn cot_matches_direct_formula_at_moderate_height() {
        let s = Complex64::new(0.3, 0.2);
        let direct = (PI * s).cos() / (PI * s).sin();
        assert!((cot_pi(s) - direct).norm() < 1e-13);
        let far = cot_pi(Complex64::new(0.3, 400.0));
        assert!((far - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut acc = CompensatedSum::default();
        acc.add(1e16);
        for _ in 0..1000 {
            acc.add(1.0);
        }
        acc.add(-1e16);
        assert_eq!(acc.value(), 1000.0);
    }
}
