//! Zero ordinates of ξ(1/2 − iz): tables, location, and sums over zeros.

mod locate;
mod sums;

pub use locate::{completed_zeta_scaled, locate_zeros, locate_zeros_detailed, LocateReport, ScaledXi};
pub use sums::{
    g_zero_sum, gg_form_zero_sum, norm_sq_zero_sum, p_t_zero_sum, weil_form, TransformEvaluator,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::Path;

/// First ordinate every genuine table must reproduce.
pub const FIRST_ORDINATE: f64 = 14.134_725_141_734_693;

const EMBEDDED: &str = include_str!("../../data/zeros100.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroSource {
    Embedded,
    File,
    Located,
    /// Deliberately altered copy used as a negative control; exempt from the
    /// first-ordinate check.
    Perturbed,
}

/// Positive ordinates γ_k with multiplicities. The mirror zeros −γ_k are
/// implied by every sum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    multiplicities: Vec<u32>,
    source: ZeroSource,
}

/// Absolute bound on the part of a sum beyond `truncation_height`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailBound {
    pub truncation_height: f64,
    pub bound: f64,
}

/// Smooth zero count θ(T)/π + 1 with the Stirling expansion of the
/// Riemann–Siegel theta function.
pub fn smooth_zero_count(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let theta = 0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t);
    theta / PI + 1.0
}

impl ZeroTable {
    pub fn new(ordinates: Vec<f64>, multiplicities: Option<Vec<u32>>, source: ZeroSource) -> Result<Self> {
        let multiplicities = multiplicities.unwrap_or_else(|| vec![1; ordinates.len()]);
        if multiplicities.len() != ordinates.len() {
            return Err(Error::Validation(format!(
                "{} multiplicities for {} ordinates",
                multiplicities.len(),
                ordinates.len()
            )));
        }
        let table = ZeroTable {
            ordinates,
            multiplicities,
            source,
        };
        table.validate()?;
        Ok(table)
    }

    /// The 100 lowest zeros shipped with the crate.
    pub fn embedded() -> Self {
        let mut t = parse_table(EMBEDDED).expect("embedded zero table parses");
        t.source = ZeroSource::Embedded;
        t.validate().expect("embedded zero table is valid");
        t
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Largest ordinate, or 0 for an empty table.
    pub fn height(&self) -> f64 {
        self.ordinates.last().copied().unwrap_or(0.0)
    }

    /// First `n` zeros.
    pub fn truncated(&self, n: usize) -> ZeroTable {
        let n = n.min(self.len());
        ZeroTable {
            ordinates: self.ordinates[..n].to_vec(),
            multiplicities: self.multiplicities[..n].to_vec(),
            source: self.source,
        }
    }

    /// Zeros with ordinate ≤ height.
    pub fn up_to(&self, height: f64) -> ZeroTable {
        let n = self.ordinates.partition_point(|&g| g <= height);
        self.truncated(n)
    }

    /// Copy with the k-th ordinate (0-based) moved by `delta`.
    pub fn perturbed(&self, k: usize, delta: f64) -> Result<ZeroTable> {
        let mut ordinates = self.ordinates.clone();
        match ordinates.get_mut(k) {
            Some(g) => *g += delta,
            None => return Err(Error::Validation(format!("no zero with index {k}"))),
        }
        ZeroTable::new(ordinates, Some(self.multiplicities.clone()), ZeroSource::Perturbed)
    }

    pub fn validate(&self) -> Result<()> {
        for (k, &g) in self.ordinates.iter().enumerate() {
            if !(g.is_finite() && g > 0.0) {
                return Err(Error::Validation(format!("ordinate {k} = {g} is not positive")));
            }
            if k > 0 && g <= self.ordinates[k - 1] {
                return Err(Error::Validation(format!(
                    "ordinates not strictly increasing at index {k}: {} then {g}",
                    self.ordinates[k - 1]
                )));
            }
        }
        if let Some(k) = self.multiplicities.iter().position(|&m| m == 0) {
            return Err(Error::Validation(format!("multiplicity {k} is zero")));
        }
        if let Some(&first) = self.ordinates.first() {
            if self.source != ZeroSource::Perturbed && (first - FIRST_ORDINATE).abs() > 1e-4 {
                return Err(Error::Validation(format!(
                    "first ordinate {first} is not within 1e-4 of {FIRST_ORDINATE}"
                )));
            }
        }
        // Counting with multiplicity, the zero at γ_k is number k; the smooth
        // count there should sit near k − 1/2.
        let mut count = 0u64;
        for (&g, &m) in self.ordinates.iter().zip(&self.multiplicities) {
            let mid = count as f64 + 0.5 * m as f64;
            count += m as u64;
            let expected = smooth_zero_count(g);
            if (expected - mid).abs() > 2.5 {
                return Err(Error::Validation(format!(
                    "count inconsistent with zero density at {g}: {count} zeros, smooth count {expected:.2}"
                )));
            }
        }
        Ok(())
    }

    /// Write in the text format read by [`load_zeros`].
    pub fn to_text(&self) -> String {
        let mut out = String::from("# imaginary parts of nontrivial zeta zeros, ascending\n");
        for (&g, &m) in self.ordinates.iter().zip(&self.multiplicities) {
            if m == 1 {
                out.push_str(&format!("{g:.15}\n"));
            } else {
                out.push_str(&format!("{g:.15} {m}\n"));
            }
        }
        out
    }
}

/// Parse the text format: one ordinate per line, optional multiplicity as a
/// second column, `#` comments and blank lines ignored.
pub fn parse_table(text: &str) -> Result<ZeroTable> {
    let mut ordinates = Vec::new();
    let mut multiplicities = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let g: f64 = fields.next().unwrap().parse().map_err(|e| Error::Parse {
            line: i + 1,
            message: format!("bad ordinate {line:?}: {e}"),
        })?;
        let m: u32 = match fields.next() {
            Some(f) => f.parse().map_err(|e| Error::Parse {
                line: i + 1,
                message: format!("bad multiplicity {f:?}: {e}"),
            })?,
            None => 1,
        };
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: i + 1,
                message: "more than two columns".into(),
            });
        }
        ordinates.push(g);
        multiplicities.push(m);
    }
    ZeroTable::new(ordinates, Some(multiplicities), ZeroSource::File)
}

pub fn load_zeros(path: impl AsRef<Path>) -> Result<ZeroTable> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_table(&text)
}
