//! Log-gamma, digamma and trigamma for complex arguments.

use crate::error::{Error, Result};
use crate::numeric::{cot_pi, is_nonpositive_integer};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Euler–Mascheroni constant γ₀.
pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

/// B_{2k} for k = 1..=10.
pub(crate) const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

fn pole(function: &'static str, s: Complex64) -> Error {
    Error::Pole {
        function,
        at: format!("{s}"),
    }
}

/// Principal branch of log Γ(s).
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s) {
        return Err(pole("log_gamma", s));
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain {
            function: "log_gamma",
            detail: format!("non-finite argument {s}"),
        });
    }
    // Shift right until Stirling is accurate; each principal log keeps the
    // result on the principal branch.
    let mut w = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 12.0 && w.norm() < 17.0 {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

fn stirling(w: Complex64) -> Complex64 {
    let half_ln_2pi = 0.5 * (2.0 * PI).ln();
    let mut value = (w - 0.5) * w.ln() - w + half_ln_2pi;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut power = inv;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let n = 2.0 * (k + 1) as f64;
        value += power * (*b / (n * (n - 1.0)));
        power *= inv2;
    }
    value
}

/// ψ(s) = Γ'(s)/Γ(s).
pub fn digamma(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s) {
        return Err(pole("digamma", s));
    }
    if s.re < 0.0 {
        // ψ(s) = ψ(1−s) − π cot(πs)
        let reflected = digamma_right(Complex64::new(1.0, 0.0) - s);
        return Ok(reflected - PI * cot_pi(s));
    }
    Ok(digamma_right(s))
}

fn digamma_right(s: Complex64) -> Complex64 {
    let mut w = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 10.0 && w.norm() < 14.0 {
        shift += w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut value = w.ln() - 0.5 * inv;
    let mut power = inv2;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let n = 2.0 * (k + 1) as f64;
        value -= power * (*b / n);
        power *= inv2;
    }
    value - shift
}

/// ψ₁(s) = Σ_{n≥0} (s+n)^{−2}.
pub fn trigamma(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s) {
        return Err(pole("trigamma", s));
    }
    if s.re < 0.0 {
        // ψ₁(1−s) + ψ₁(s) = π² / sin²(πs)
        let c = cot_pi(s);
        let reflected = trigamma_right(Complex64::new(1.0, 0.0) - s);
        return Ok(PI * PI * (1.0 + c * c) - reflected);
    }
    Ok(trigamma_right(s))
}

fn trigamma_right(s: Complex64) -> Complex64 {
    let mut w = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 10.0 && w.norm() < 14.0 {
        shift += (w * w).inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut value = inv + 0.5 * inv2;
    let mut power = inv2 * inv;
    for b in BERNOULLI_EVEN.iter() {
        value += power * *b;
        power *= inv2;
    }
    value + shift
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Digamma by direct summation of −γ₀ − Σ (1/(w+n) − 1/(n+1)),
    /// with the tail replaced by its Euler–Maclaurin integral.
    fn digamma_series(w: Complex64) -> Complex64 {
        let n_terms = 2_000_000usize;
        let mut sum = c(-EULER_MASCHERONI, 0.0);
        for n in 0..n_terms {
            let nf = n as f64;
            sum -= (w + nf).inv() - 1.0 / (nf + 1.0);
        }
        // Σ_{n≥M} (1/(n+1) − 1/(w+n)) by the midpoint rule
        let m = n_terms as f64;
        let tail = ((c(m, 0.0) + w - 0.5) / (m + 0.5)).ln();
        sum + tail
    }

    #[test]
    fn log_gamma_small_integers() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        let v = log_gamma(c(5.0, 0.0)).unwrap();
        assert!((v.re - 24f64.ln()).abs() < 1e-14 && v.im.abs() < 1e-15);
    }

    #[test]
    fn log_gamma_recurrence_and_branch() {
        for &s in &[c(0.25, 3.0), c(-2.7, 0.4), c(3.5, -40.0), c(0.5, 1000.0)] {
            let lhs = log_gamma(s + 1.0).unwrap();
            let rhs = log_gamma(s).unwrap() + s.ln();
            // equal modulo 2πi; on the principal branch the difference is a multiple of 2πi
            let d = lhs - rhs;
            let k = (d.im / (2.0 * PI)).round();
            assert!((d - c(0.0, 2.0 * PI * k)).norm() < 1e-12 * (1.0 + lhs.norm()));
        }
        // Γ(1/2) = √π
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.5 * PI.ln()).abs() < 1e-14);
    }

    #[test]
    fn log_gamma_matches_reflection_oracle() {
        // |Γ(1/4 + 3i)|: Γ(s)Γ(1−s) = π / sin(πs)
        let s = c(0.25, 3.0);
        let lhs = log_gamma(s).unwrap() + log_gamma(c(1.0, 0.0) - s).unwrap();
        let rhs = (c(PI, 0.0) / (PI * s).sin()).ln();
        let d = lhs - rhs;
        let k = (d.im / (2.0 * PI)).round();
        assert!((d - c(0.0, 2.0 * PI * k)).norm() < 1e-13);
    }

    #[test]
    fn digamma_special_values() {
        let one = digamma(c(1.0, 0.0)).unwrap();
        assert!((one.re + EULER_MASCHERONI).abs() < 1e-15);
        let half = digamma(c(0.5, 0.0)).unwrap();
        assert!((half.re + EULER_MASCHERONI + 2.0 * 2f64.ln()).abs() < 1e-14);
        // ψ(1/4) = −γ₀ − π/2 − 3 log 2
        let quarter = digamma(c(0.25, 0.0)).unwrap();
        let closed = -EULER_MASCHERONI - PI / 2.0 - 3.0 * 2f64.ln();
        assert!((quarter.re - closed).abs() < 1e-14);
    }

    #[test]
    fn digamma_matches_direct_series() {
        for &s in &[c(0.25, 0.0), c(2.0, 3.0), c(-3.3, 1.5), c(0.1, -7.0), c(6.0, 6.0)] {
            let oracle = digamma_series(s);
            let v = digamma(s).unwrap();
            assert!((v - oracle).norm() < 1e-11, "{s}: {v} vs {oracle}");
        }
    }

    #[test]
    fn digamma_large_imaginary_reflection() {
        let s = c(-0.25, 2500.0);
        let v = digamma(s).unwrap();
        let direct = digamma(c(1.0, 0.0) - s).unwrap() - PI * cot_pi(s);
        assert!((v - direct).norm() < 1e-12);
        assert!((v - s.ln()).norm() < 1e-3);
    }

    #[test]
    fn trigamma_values() {
        let one = trigamma(c(1.0, 0.0)).unwrap();
        assert!((one.re - PI * PI / 6.0).abs() < 1e-14);
        // ψ₁(1/4) = π² + 8G with Catalan's constant G
        let catalan = 0.915_965_594_177_219_015;
        let q = trigamma(c(0.25, 0.0)).unwrap();
        assert!((q.re - (PI * PI + 8.0 * catalan)).abs() < 1e-13);
        let s = c(-1.7, 0.9);
        let d = trigamma(s).unwrap() - trigamma(s + 1.0).unwrap() - (s * s).inv();
        assert!(d.norm() < 1e-12);
    }

    #[test]
    fn poles_are_errors() {
        assert!(log_gamma(c(0.0, 0.0)).is_err());
        assert!(digamma(c(-3.0, 0.0)).is_err());
        assert!(trigamma(c(-1.0, 0.0)).is_err());
    }
}
