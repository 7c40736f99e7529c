//! Riemann zeta and its derivative by Euler–Maclaurin summation.

use super::gamma::digamma;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Largest |Im s| accepted; cost grows linearly with the height.
pub const MAX_HEIGHT: f64 = 1.0e5;

const MIN_CORRECTIONS: usize = 8;
const MAX_CORRECTIONS: usize = 20;

/// B_{2k}/(2k)! for k = 1..=20.
fn correction_coefficients() -> &'static [f64; MAX_CORRECTIONS] {
    static COEFFS: OnceLock<[f64; MAX_CORRECTIONS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        const B: [(f64, f64); MAX_CORRECTIONS] = [
            (1.0, 6.0),
            (-1.0, 30.0),
            (1.0, 42.0),
            (-1.0, 30.0),
            (5.0, 66.0),
            (-691.0, 2730.0),
            (7.0, 6.0),
            (-3617.0, 510.0),
            (43867.0, 798.0),
            (-174611.0, 330.0),
            (854513.0, 138.0),
            (-236364091.0, 2730.0),
            (8553103.0, 6.0),
            (-23749461029.0, 870.0),
            (8615841276005.0, 14322.0),
            (-7709321041217.0, 510.0),
            (2577687858367.0, 6.0),
            (-26315271553053477373.0, 1919190.0),
            (2929993913841559.0, 6.0),
            (-261082718496449122051.0, 13530.0),
        ];
        let mut out = [0.0; MAX_CORRECTIONS];
        let mut factorial = 1.0f64;
        for (k, (num, den)) in B.iter().enumerate() {
            let n = 2 * (k + 1);
            factorial *= ((n - 1) * n) as f64;
            out[k] = num / den / factorial;
        }
        out
    })
}

/// Number of directly summed terms used for a given argument.
pub fn euler_maclaurin_cutoff(s: Complex64) -> usize {
    ((s.im.abs() / 2.0).ceil() as usize).max(10)
}

fn check_domain(s: Complex64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain {
            function: "zeta",
            detail: format!("non-finite argument {s}"),
        });
    }
    if s.re <= -1.0 || s.im.abs() > MAX_HEIGHT {
        return Err(Error::Domain {
            function: "zeta",
            detail: format!("{s} outside Re s > -1, |Im s| <= {MAX_HEIGHT}"),
        });
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole {
            function: "zeta",
            at: "1".into(),
        });
    }
    Ok(())
}

/// ζ(s) and ζ'(s) together; they share every power n^{−s}.
pub fn zeta_and_derivative(s: Complex64) -> Result<(Complex64, Complex64)> {
    check_domain(s)?;
    Ok(euler_maclaurin(s, euler_maclaurin_cutoff(s)))
}

/// Same as [`zeta_and_derivative`] with an explicit summation cutoff N ≥ 2.
pub fn zeta_with_cutoff(s: Complex64, cutoff: usize) -> Result<(Complex64, Complex64)> {
    check_domain(s)?;
    if cutoff < 2 {
        return Err(Error::Domain {
            function: "zeta",
            detail: format!("cutoff {cutoff} < 2"),
        });
    }
    Ok(euler_maclaurin(s, cutoff))
}

pub fn zeta(s: Complex64) -> Result<Complex64> {
    zeta_and_derivative(s).map(|(z, _)| z)
}

pub fn zeta_prime(s: Complex64) -> Result<Complex64> {
    zeta_and_derivative(s).map(|(_, d)| d)
}

fn euler_maclaurin(s: Complex64, n_cut: usize) -> (Complex64, Complex64) {
    let (sigma, t) = (s.re, s.im);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut dsum = Complex64::new(0.0, 0.0);
    // Sum backwards so the small terms accumulate first.
    for n in (2..n_cut).rev() {
        let ln_n = (n as f64).ln();
        let mag = (-sigma * ln_n).exp();
        let (sin, cos) = (t * ln_n).sin_cos();
        let term = Complex64::new(mag * cos, -mag * sin);
        sum += term;
        dsum -= term * ln_n;
    }
    sum += 1.0;

    let nf = n_cut as f64;
    let ln_nf = nf.ln();
    let mag = (-sigma * ln_nf).exp();
    let (sin, cos) = (t * ln_nf).sin_cos();
    let n_pow = Complex64::new(mag * cos, -mag * sin); // N^{−s}
    let sm1 = s - 1.0;
    let integral = n_pow * nf / sm1;
    sum += integral + 0.5 * n_pow;
    dsum += -integral * (ln_nf + sm1.inv()) - 0.5 * ln_nf * n_pow;

    let coeffs = correction_coefficients();
    let inv_n2 = 1.0 / (nf * nf);
    // p_k = s(s+1)…(s+2k−2), dp its derivative, scale = N^{−s−2k+1}
    let mut p = s;
    let mut dp = Complex64::new(1.0, 0.0);
    let mut scale = n_pow / nf;
    for (k, c) in coeffs.iter().enumerate() {
        let term = *c * p * scale;
        let dterm = *c * (dp - ln_nf * p) * scale;
        sum += term;
        dsum += dterm;
        if k + 1 >= MIN_CORRECTIONS && term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        let a = s + (2 * k + 1) as f64;
        let b = s + (2 * k + 2) as f64;
        dp = dp * a * b + p * (a + b);
        p = p * a * b;
        scale *= inv_n2;
    }
    (sum, dsum)
}

/// Logarithmic derivative of the completed zeta π^{−s/2}Γ(s/2)ζ(s).
pub fn zlog_deriv(s: Complex64) -> Result<Complex64> {
    let (z, dz) = zeta_and_derivative(s)?;
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole {
            function: "zlog_deriv",
            at: format!("{s}"),
        });
    }
    let psi = digamma(s / 2.0)?;
    Ok(-0.5 * PI.ln() + 0.5 * psi + dz / z)
}
