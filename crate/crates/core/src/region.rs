//! The dimension-count inequality `g(g+1)/2 < Σ_{m=3}^{g} C(k, m−1)` over a
//! grid of depths and genera, with monotonicity provenance, and the related
//! rank formulas.

use std::fmt::Write;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::hall::{binomial, witt};
use crate::io::int_to_json;

/// How a cell's verdict is justified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Direct comparison of both sides.
    Explicit,
    /// Follows from the cell `(k−1, g)` since `C(k, m) ≥ C(k−1, m)`.
    MonotoneK,
    /// Follows from the cell `(k, g−1)`.
    MonotoneG,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionCell {
    pub k: u64,
    pub g: u64,
    pub rhs: BigInt,
    pub lhs: BigInt,
    pub holds: bool,
    pub provenance: Provenance,
}

/// `g(g+1)/2`.
pub fn region_lhs(g: u64) -> BigInt {
    BigInt::from(g) * BigInt::from(g + 1) / 2
}

/// `binom(g, 3)` for `k = 2`, else `Σ_{m=3}^{g} C(k, m−1)`.
pub fn region_rhs(k: u64, g: u64) -> BigInt {
    assert!(k >= 2 && g >= 2, "region is defined for k, g ≥ 2");
    if k == 2 {
        binomial(g, 3)
    } else {
        purebraid_rank(k, g)
    }
}

/// `Σ_{m=3}^{g} C(k, m−1)`: the rank of the weight-`k` graded piece of the
/// lower central series of the pure braid group on `g` strands.
pub fn purebraid_rank(k: u64, g: u64) -> BigInt {
    assert!(k >= 1, "weight must be positive");
    (3..=g).map(|m| witt(k, m - 1)).sum()
}

fn explicit(k: u64, g: u64) -> bool {
    region_lhs(g) < region_rhs(k, g)
}

/// The verdict at `(k, g)` and where it comes from. A holding cell is
/// attributed to the first applicable monotonicity step from a holding
/// neighbour: in `k` (needs `k ≥ 3, g ≥ 3`), then in `g` along `k = 3`
/// (needs `g ≥ 4`) or along `k = 2` past `g = 7`.
pub fn region_holds(k: u64, g: u64) -> (bool, Provenance) {
    let holds = explicit(k, g);
    if !holds {
        return (false, Provenance::Explicit);
    }
    if k >= 3 && g >= 3 && explicit(k - 1, g) {
        return (true, Provenance::MonotoneK);
    }
    if ((k == 3 && g >= 4) || (k == 2 && g >= 8)) && explicit(k, g - 1) {
        return (true, Provenance::MonotoneG);
    }
    (true, Provenance::Explicit)
}

pub fn region_cell(k: u64, g: u64) -> RegionCell {
    let (holds, provenance) = region_holds(k, g);
    RegionCell { k, g, rhs: region_rhs(k, g), lhs: region_lhs(g), holds, provenance }
}

/// All cells `2 ≤ k ≤ kmax`, `2 ≤ g ≤ gmax`, ordered by `k` then `g`.
pub fn region_table(kmax: u64, gmax: u64) -> Vec<RegionCell> {
    let keys: Vec<(u64, u64)> = (2..=kmax).flat_map(|k| (2..=gmax).map(move |g| (k, g))).collect();
    keys.par_iter().map(|&(k, g)| region_cell(k, g)).collect()
}

/// Ranks of the weight-2 image `Λ³H / (Ω ∧ H)` and of its part with no
/// Lagrangian index: `(binom(2g, 3) − 2g, binom(g, 3))`.
pub fn tau2_image_dims(g: u64) -> (BigInt, BigInt) {
    let total = if g >= 2 { binomial(2 * g, 3) - BigInt::from(2 * g) } else { BigInt::from(0) };
    (total, binomial(g, 3))
}

/// One row per cell: `k,g,lhs,rhs,holds,provenance`.
pub fn render_csv(cells: &[RegionCell]) -> String {
    let mut out = String::from("k,g,lhs,rhs,holds,provenance\n");
    for c in cells {
        let prov = serde_json::to_value(c.provenance).unwrap();
        writeln!(out, "{},{},{},{},{},{}", c.k, c.g, c.lhs, c.rhs, c.holds, prov.as_str().unwrap()).unwrap();
    }
    out
}

pub fn render_json(cells: &[RegionCell]) -> serde_json::Value {
    serde_json::Value::Array(
        cells
            .iter()
            .map(|c| {
                serde_json::json!({
                    "k": c.k,
                    "g": c.g,
                    "lhs": int_to_json(&c.lhs),
                    "rhs": int_to_json(&c.rhs),
                    "holds": c.holds,
                    "provenance": c.provenance,
                })
            })
            .collect(),
    )
}

/// Grid layout: right-hand sides with rows `k = kmax..2`, the left-hand side
/// row, then the region (`+` holds, `.` fails).
pub fn render_table(cells: &[RegionCell]) -> String {
    let kmax = cells.iter().map(|c| c.k).max().unwrap_or(2);
    let gmax = cells.iter().map(|c| c.g).max().unwrap_or(2);
    let get = |k: u64, g: u64| cells.iter().find(|c| c.k == k && c.g == g);
    let width = cells.iter().map(|c| c.rhs.to_string().len()).max().unwrap_or(1).max(3) + 1;
    let mut out = String::new();
    let header: String = (2..=gmax).map(|g| format!("{g:>width$}")).collect();
    writeln!(out, "{:<10}{}", "k \\ g", header).unwrap();
    for k in (2..=kmax).rev() {
        let row: String = (2..=gmax).map(|g| format!("{:>width$}", get(k, g).map(|c| c.rhs.to_string()).unwrap_or_default())).collect();
        writeln!(out, "{:<10}{}", k, row).unwrap();
    }
    let lhs: String = (2..=gmax).map(|g| format!("{:>width$}", region_lhs(g).to_string())).collect();
    writeln!(out, "{:<10}{}", "g(g+1)/2", lhs).unwrap();
    writeln!(out).unwrap();
    writeln!(out, "{:<10}{}", "region", header).unwrap();
    for k in (2..=kmax).rev() {
        let row: String = (2..=gmax)
            .map(|g| format!("{:>width$}", if get(k, g).is_some_and(|c| c.holds) { "+" } else { "." }))
            .collect();
        writeln!(out, "{:<10}{}", k, row).unwrap();
    }
    out
}
