//! Hurwitz–Lerch transcendent Φ(x, s, a) for real 0 ≤ x < 1 and s ∈ {1, 2}.

use super::gamma::EULER_MASCHERONI;
use crate::error::{Error, Result};
use crate::numeric::is_nonpositive_integer;
use num_complex::Complex64;

const MAX_TERMS: usize = 50_000_000;

/// Φ(x, s, a) = Σ_{n≥0} xⁿ (n+a)^{−s}.
pub fn lerch_phi(x: f64, s: u32, a: Complex64) -> Result<Complex64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain {
            function: "lerch_phi",
            detail: format!("x = {x} not in [0, 1)"),
        });
    }
    if s != 1 && s != 2 {
        return Err(Error::Domain {
            function: "lerch_phi",
            detail: format!("order s = {s} not in {{1, 2}}"),
        });
    }
    if is_nonpositive_integer(a) {
        return Err(Error::Pole {
            function: "lerch_phi",
            at: format!("a = {a}"),
        });
    }
    if x == 0.0 {
        return Ok(a.powi(-(s as i32)));
    }
    if x > 0.5 && a.im == 0.0 && a.re > 0.0 {
        return Ok(Complex64::new(lerch_real_accelerated(x, s, a.re), 0.0));
    }
    lerch_direct(x, s, a)
}

fn lerch_direct(x: f64, s: u32, a: Complex64) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut xn = 1.0;
    for n in 0..MAX_TERMS {
        let d = a + n as f64;
        let term = if s == 1 { xn / d } else { xn / (d * d) };
        sum += term;
        xn *= x;
        let base = n as f64 + 1.0 + a.re;
        if base > 0.0 {
            let tail = xn / (base.powi(s as i32) * (1.0 - x));
            if tail <= 1e-17 * sum.norm() || xn == 0.0 {
                return Ok(sum);
            }
        }
    }
    Err(Error::NonConvergence {
        function: "lerch_phi",
        terms: MAX_TERMS,
    })
}

/// B_{2k}/(2k)! for k = 1..=8.
const EM_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
];

/// Direct head plus an Euler–Maclaurin tail; cost does not grow as x → 1.
fn lerch_real_accelerated(x: f64, s: u32, a: f64) -> f64 {
    const HEAD: usize = 20;
    let lambda = -x.ln();
    let mut head = 0.0;
    let mut xn = 1.0;
    for n in 0..HEAD {
        let d = n as f64 + a;
        head += xn / d.powi(s as i32);
        xn *= x;
    }
    // f(u) = e^{−λu}(u+a)^{−s} summed over u ≥ HEAD
    let v = HEAD as f64 + a;
    let tail_integral = (lambda * a).exp() * v.powi(1 - s as i32) * expint(s, lambda * v) ;
    let f_n = xn / v.powi(s as i32);
    // derivatives of f at u = HEAD by Leibniz on e^{−λu}·(u+a)^{−s}
    let max_order = 2 * EM_COEFFS.len();
    let mut pow_derivs = vec![0.0; max_order]; // d^j/du^j (u+a)^{−s}
    let mut falling = 1.0;
    for (j, slot) in pow_derivs.iter_mut().enumerate() {
        *slot = falling * v.powi(-(s as i32) - j as i32);
        falling *= -(s as f64 + j as f64);
    }
    let mut corr = 0.0;
    for (k, c) in EM_COEFFS.iter().enumerate() {
        let m = 2 * k + 1;
        let mut deriv = 0.0;
        let mut binom = 1.0;
        for j in 0..=m {
            deriv += binom * (-lambda).powi((m - j) as i32) * pow_derivs[j];
            binom = binom * (m - j) as f64 / (j + 1) as f64;
        }
        corr += c * xn * deriv;
    }
    head + tail_integral + 0.5 * f_n - corr
}

/// Generalised exponential integral E_s(y) = ∫₁^∞ e^{−yu} u^{−s} du for s ∈ {1, 2}, y > 0.
pub fn expint(s: u32, y: f64) -> f64 {
    let e1 = expint_e1(y);
    if s == 1 {
        e1
    } else {
        (-y).exp() - y * e1
    }
}

fn expint_e1(y: f64) -> f64 {
    if y <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..60 {
            term *= -y / k as f64;
            let add = -term / k as f64;
            sum += add;
            if add.abs() < 1e-18 * sum.abs().max(1e-300) {
                break;
            }
        }
        -EULER_MASCHERONI - y.ln() + sum
    } else {
        // modified Lentz on the continued fraction e^{−y}/(y+1−1/(y+3−4/(y+5−…)))
        let tiny = 1e-300;
        let mut b = y + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-y).exp()
    }
}
