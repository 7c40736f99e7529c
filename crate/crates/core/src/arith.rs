//! von Mangoldt sieve and the finite prime sums over n ≤ e^t.

use crate::error::{Error, Result};
use crate::numeric::{osc_kernel, CompensatedSum};
use num_complex::Complex64;

/// Largest sieve bound accepted.
pub const MAX_BOUND: u64 = 100_000_000;

/// One prime power n = p^k with Λ(n) = log p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimePower {
    pub n: u64,
    pub lambda: f64,
    /// Λ(n)/√n
    pub weight: f64,
    pub ln_n: f64,
}

/// Λ(n) for 1 ≤ n ≤ bound, stored sparsely as the sorted list of prime powers.
#[derive(Debug, Clone)]
pub struct MangoldtTable {
    bound: u64,
    powers: Vec<PrimePower>,
}

impl MangoldtTable {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Prime powers in increasing order.
    pub fn prime_powers(&self) -> &[PrimePower] {
        &self.powers
    }

    /// Λ(n); zero for n outside 1..=bound or not a prime power.
    pub fn lambda(&self, n: u64) -> f64 {
        match self.powers.binary_search_by_key(&n, |p| p.n) {
            Ok(i) => self.powers[i].lambda,
            Err(_) => 0.0,
        }
    }

    /// Chebyshev ψ(N) = Σ_{n≤N} Λ(n).
    pub fn chebyshev_psi(&self, n_max: u64) -> f64 {
        let mut acc = CompensatedSum::default();
        for p in self.powers.iter().take_while(|p| p.n <= n_max) {
            acc.add(p.lambda);
        }
        acc.value()
    }

    /// Prime powers n ≤ e^t, checking the table reaches that far.
    pub fn powers_up_to(&self, t: f64) -> Result<&[PrimePower]> {
        if t < 0.0 {
            return Ok(&[]);
        }
        let limit = (t.exp() + 1e-12).floor();
        if limit > self.bound as f64 {
            return Err(Error::TableTooSmall {
                bound: self.bound,
                required: limit.min(u64::MAX as f64) as u64,
            });
        }
        let limit = limit as u64;
        let end = self.powers.partition_point(|p| p.n <= limit);
        Ok(&self.powers[..end])
    }

    /// Prime power n whose log n is nearest to t, with the distance |t − log n|.
    pub fn nearest_jump(&self, t: f64) -> Option<(u64, f64)> {
        let i = self.powers.partition_point(|p| p.ln_n < t);
        let mut best: Option<(u64, f64)> = None;
        for j in [i.wrapping_sub(1), i] {
            if let Some(p) = self.powers.get(j) {
                let d = (t - p.ln_n).abs();
                if best.map_or(true, |(_, bd)| d < bd) {
                    best = Some((p.n, d));
                }
            }
        }
        best
    }
}

/// Sieve of Eratosthenes, then every prime power p^k ≤ N.
pub fn sieve_mangoldt(bound: u64) -> Result<MangoldtTable> {
    if bound == 0 || bound > MAX_BOUND {
        return Err(Error::Capacity {
            requested: bound,
            limit: MAX_BOUND,
        });
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut powers = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        let mut m = p * p;
        while m <= n {
            composite[m] = true;
            m += p;
        }
        let lp = (p as f64).ln();
        let mut q = p as u64;
        while q <= bound {
            powers.push(PrimePower {
                n: q,
                lambda: lp,
                weight: lp / (q as f64).sqrt(),
                ln_n: (q as f64).ln(),
            });
            q = match q.checked_mul(p as u64) {
                Some(v) => v,
                None => break,
            };
        }
    }
    powers.sort_by_key(|p| p.n);
    Ok(MangoldtTable { bound, powers })
}

/// Σ_{n≤e^t} Λ(n)/√n · (t − log n)
pub fn prime_sum_g(t: f64, table: &MangoldtTable) -> Result<f64> {
    let mut acc = CompensatedSum::default();
    for p in table.powers_up_to(t)? {
        acc.add(p.weight * (t - p.ln_n));
    }
    Ok(acc.value())
}

/// Σ_{n≤e^t} Λ(n)/√n
pub fn prime_sum_plain(t: f64, table: &MangoldtTable) -> Result<f64> {
    let mut acc = CompensatedSum::default();
    for p in table.powers_up_to(t)? {
        acc.add(p.weight);
    }
    Ok(acc.value())
}

/// Σ_{n≤e^t} Λ(n)/√n · (e^{iz(t−log n)} − 1)/(iz); equals [`prime_sum_g`] at z = 0.
pub fn prime_sum_osc(t: f64, z: Complex64, table: &MangoldtTable) -> Result<Complex64> {
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for p in table.powers_up_to(t)? {
        let v = p.weight * osc_kernel(z, t - p.ln_n);
        re.add(v.re);
        im.add(v.im);
    }
    Ok(Complex64::new(re.value(), im.value()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> MangoldtTable {
        sieve_mangoldt(10_000).unwrap()
    }

    #[test]
    fn lambda_values() {
        let t = table();
        assert_eq!(t.lambda(1), 0.0);
        assert_eq!(t.lambda(6), 0.0);
        assert!((t.lambda(8) - 2f64.ln()).abs() < 1e-16);
        assert!((t.lambda(97) - 97f64.ln()).abs() < 1e-15);
        assert!((t.lambda(3125) - 5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn lambda_matches_trial_division() {
        let t = table();
        for n in 1..2000u64 {
            let mut m = n;
            let mut p = 2;
            while p * p <= m && m % p != 0 {
                p += 1;
            }
            let p = if m % p == 0 && p * p <= n { p } else { m };
            let expected = if n == 1 {
                0.0
            } else {
                while m % p == 0 {
                    m /= p;
                }
                if m == 1 {
                    (p as f64).ln()
                } else {
                    0.0
                }
            };
            assert!((t.lambda(n) - expected).abs() < 1e-15, "n={n}");
        }
    }

    #[test]
    fn chebyshev_band() {
        let t = table();
        for &n in &[1000u64, 5000, 10_000] {
            let psi = t.chebyshev_psi(n);
            assert!(psi >= 0.9 * n as f64 && psi <= 1.2 * n as f64, "ψ({n}) = {psi}");
        }
    }

    #[test]
    fn capacity_guard() {
        assert!(matches!(sieve_mangoldt(MAX_BOUND + 1), Err(Error::Capacity { .. })));
        assert!(sieve_mangoldt(0).is_err());
    }

    #[test]
    fn prime_sum_examples() {
        let t = table();
        assert_eq!(prime_sum_g(0.5, &t).unwrap(), 0.0);
        assert!(prime_sum_g(2f64.ln(), &t).unwrap().abs() < 1e-16);
        let direct: f64 = [2u64, 3, 4, 5, 7]
            .iter()
            .map(|&n| t.lambda(n) * (2.0 - (n as f64).ln()) / (n as f64).sqrt())
            .sum();
        assert!((prime_sum_g(2.0, &t).unwrap() - direct).abs() < 1e-15);
        assert!((prime_sum_plain(1.0, &t).unwrap() - 2f64.ln() / 2f64.sqrt()).abs() < 1e-16);
        assert_eq!(prime_sum_osc(0.5, Complex64::new(3.0, 1.0), &t).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn osc_sum_against_direct_formula() {
        let t = table();
        let z = Complex64::new(0.0, 3.0);
        let iz = Complex64::i() * z;
        let direct: Complex64 = [2u64, 3, 4, 5, 7]
            .iter()
            .map(|&n| {
                let tau = 2.0 - (n as f64).ln();
                t.lambda(n) / (n as f64).sqrt() * ((iz * tau).exp() - 1.0) / iz
            })
            .sum();
        assert!((prime_sum_osc(2.0, z, &t).unwrap() - direct).norm() < 1e-14);
        let tiny = prime_sum_osc(2.0, Complex64::new(1e-9, 0.0), &t).unwrap();
        assert!((tiny.re - prime_sum_g(2.0, &t).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn integer_boundary_included() {
        let t = table();
        // e^{log 7} may round below 7; the n = 7 term must still be present.
        let at = prime_sum_plain(7f64.ln(), &t).unwrap();
        let above = prime_sum_plain(7f64.ln() + 1e-9, &t).unwrap();
        assert_eq!(at, above);
    }

    #[test]
    fn table_too_small() {
        let t = sieve_mangoldt(100).unwrap();
        assert!(matches!(prime_sum_g(5.0, &t), Err(Error::TableTooSmall { .. })));
    }
}
