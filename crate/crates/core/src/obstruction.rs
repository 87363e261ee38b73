//! The handlebody obstruction: the x-count grading of `H₁ ⊗ ℒ_k` in a basis
//! adapted to a Lagrangian, the grade-0 vanishing test, and scans over
//! families of Lagrangians.

use std::collections::HashSet;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::johnson::{tau, MappingClassData, TauKind, TauValue};
use crate::lie::substitute;
use crate::matrix::Matrix;
use crate::surface::{Graded, SurfaceModel};
use crate::symplectic::{adapt_symplectic_basis, gram, Lagrangian};
use crate::{Int, LieElement};

/// A surface-reduced tensor rewritten in an adapted basis `(x, y)` and split
/// by the number of `x`'s (tensor factor plus Lie word).
#[derive(Clone, Debug)]
pub struct GradedDecomposition {
    /// Columns `x₁..x_g, y₁..y_g` in the old basis.
    pub basis: Matrix<Int>,
    /// The input in the new coordinates.
    pub transformed: TauValue,
    /// `components[i]` has exactly `i` x-occurrences; `i = 0..=k+1`.
    pub components: Vec<TauValue>,
}

impl GradedDecomposition {
    pub fn grade(&self, i: usize) -> &TauValue {
        &self.components[i]
    }

    /// Sum of all components; equals `transformed`.
    pub fn total(&self) -> TauValue {
        let mut acc = TauValue::zero(self.transformed.genus, self.transformed.weight, self.transformed.kind);
        for c in &self.components {
            acc = acc.add(c).expect("components share a shape");
        }
        acc
    }
}

/// `S⁻¹ = −J Sᵀ J` for symplectic `S`.
fn symplectic_inverse(s: &Matrix<Int>) -> Matrix<Int> {
    let j = gram(s.rows() / 2);
    j.mul(&s.transpose()).mul(&j).scale(&-Int::one())
}

/// Rewrites `t` in the basis given by the columns of the symplectic matrix `s`.
pub fn change_basis(model: &SurfaceModel, t: &TauValue, s: &Matrix<Int>) -> TauValue {
    let n = 2 * t.genus;
    let sinv = symplectic_inverse(s);
    let images: Vec<LieElement> = (0..n)
        .map(|j| {
            let mut e = LieElement::zero(1);
            for m in 0..n {
                e.add_scaled(&LieElement::generator(m), sinv.get(m, j));
            }
            e
        })
        .collect();
    let subst: Vec<LieElement> = t.parts.iter().map(|p| substitute(p, &images)).collect();
    let mut out = TauValue::zero(t.genus, t.weight, t.kind);
    for m in 0..n {
        let mut e = LieElement::zero(t.weight);
        for (j, p) in subst.iter().enumerate() {
            e.add_scaled(p, sinv.get(m, j));
        }
        out.parts[m] = if t.kind == TauKind::Surface { model.reduce(&e).normal_form } else { e };
    }
    out
}

/// Splits a surface-reduced tensor by x-count in a basis adapted to `l`.
pub fn grade_decompose(model: &SurfaceModel, t: &TauValue, l: &Lagrangian) -> Result<GradedDecomposition> {
    if t.kind != TauKind::Surface {
        return Err(Error::Precondition("grade_decompose needs a surface-reduced value".into()));
    }
    if l.genus() != t.genus || model.genus() != t.genus {
        return Err(Error::DimensionMismatch { expected: t.genus, found: l.genus() });
    }
    let s = adapt_symplectic_basis(l)?;
    let transformed = change_basis(model, t, &s);
    let g = t.genus;
    let mut components: Vec<TauValue> = (0..=t.weight + 1).map(|_| TauValue::zero(g, t.weight, t.kind)).collect();
    for (m, part) in transformed.parts.iter().enumerate() {
        let own = usize::from(m < g);
        for (tree, c) in part.terms() {
            let grade = own + tree.count_leaves(&|x| x < g);
            components[grade].parts[m].add_term(tree.clone(), c.clone());
        }
    }
    Ok(GradedDecomposition { basis: s, transformed, components })
}

fn grade_zero_vanishes(model: &SurfaceModel, t: &TauValue, l: &Lagrangian) -> Result<bool> {
    Ok(grade_decompose(model, t, l)?.grade(0).is_zero())
}

/// Whether `j_* ∘ τ_k[f]` vanishes for a handlebody with kernel `l`.
pub fn obstruction_vanishes(model: &SurfaceModel, f: &MappingClassData, k: usize, l: &Lagrangian) -> Result<bool> {
    grade_zero_vanishes(model, &tau(model, f, k)?, l)
}

/// The same test for the standard handlebody, computed at the group level:
/// kill every `aᵢ` and check that each `f(aᵢ)aᵢ⁻¹` leaves weight `k`.
pub fn standard_obstruction_vanishes_direct(model: &SurfaceModel, f: &MappingClassData, k: usize) -> Result<bool> {
    let _ = tau(model, f, k)?;
    for i in 0..f.genus() {
        if let Graded::Class { weight, .. } = model.handlebody_class(&f.defect(i), k)? {
            if weight <= k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Which Lagrangians a scan visits.
#[derive(Clone, Debug, Default)]
pub struct LagrangianSource {
    pub coordinate: bool,
    /// Entry bound for perturbation matrices; 0 disables perturbations.
    pub height: usize,
    pub extra: Vec<Lagrangian>,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub vanishing: Vec<Lagrangian>,
    pub scanned: usize,
}

/// Symmetric `g×g` matrices with entries in `[−h, h]` and at most two nonzero
/// entries on or above the diagonal, in a fixed order.
fn perturbations(g: usize, h: i64) -> Vec<Vec<Vec<i64>>> {
    let slots: Vec<(usize, usize)> = (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).collect();
    let values: Vec<i64> = (1..=h).flat_map(|v| [v, -v]).collect();
    let mut out = Vec::new();
    let build = |entries: &[((usize, usize), i64)]| {
        let mut a = vec![vec![0i64; g]; g];
        for &((i, j), v) in entries {
            a[i][j] = v;
            a[j][i] = v;
        }
        a
    };
    for (si, &s) in slots.iter().enumerate() {
        for &v in &values {
            out.push(build(&[(s, v)]));
        }
        for &t in &slots[si + 1..] {
            for &v in &values {
                for &w in &values {
                    out.push(build(&[(s, v), (t, w)]));
                }
            }
        }
    }
    out
}

/// The Lagrangian `span{xᵢ + Σⱼ A_ij yⱼ}` over the coordinate pair chosen by `mask`.
fn graph_lagrangian(g: usize, mask: u64, a: &[Vec<i64>]) -> Lagrangian {
    // x_i = α_i, y_i = β_i, or x_i = β_i, y_i = −α_i
    let basis_pair = |i: usize| -> (Vec<Int>, Vec<Int>) {
        let mut x = vec![Int::zero(); 2 * g];
        let mut y = vec![Int::zero(); 2 * g];
        if mask >> i & 1 == 1 {
            x[g + i] = Int::one();
            y[i] = -Int::one();
        } else {
            x[i] = Int::one();
            y[g + i] = Int::one();
        }
        (x, y)
    };
    let pairs: Vec<_> = (0..g).map(basis_pair).collect();
    let span = (0..g)
        .map(|i| {
            let mut v = pairs[i].0.clone();
            for (j, pair) in pairs.iter().enumerate() {
                if a[i][j] != 0 {
                    for (t, y) in v.iter_mut().zip(&pair.1) {
                        *t += Int::from(a[i][j]) * y;
                    }
                }
            }
            v
        })
        .collect();
    Lagrangian::new(g, span).expect("graphs of symmetric matrices are Lagrangian")
}

/// The Lagrangians visited by a scan, deduplicated, in scan order.
pub fn scan_family(genus: usize, source: &LagrangianSource) -> Vec<Lagrangian> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |l: Lagrangian| {
        if seen.insert(l.clone()) {
            out.push(l);
        }
    };
    if source.coordinate {
        for mask in 0..(1u64 << genus) {
            push(Lagrangian::coordinate(genus, mask));
        }
        if source.height > 0 {
            let ps = perturbations(genus, source.height as i64);
            for mask in 0..(1u64 << genus) {
                for a in &ps {
                    push(graph_lagrangian(genus, mask, a));
                }
            }
        }
    }
    for l in &source.extra {
        push(l.clone());
    }
    out
}

/// Evaluates the obstruction over a family of Lagrangians. A nonempty
/// `vanishing` list certifies that `f` is not robust via that family.
pub fn robustness_scan(model: &SurfaceModel, f: &MappingClassData, k: usize, source: &LagrangianSource) -> Result<ScanReport> {
    let t = tau(model, f, k)?;
    let family = scan_family(f.genus(), source);
    let verdicts: Vec<Result<bool>> = family.par_iter().map(|l| grade_zero_vanishes(model, &t, l)).collect();
    let mut vanishing = Vec::new();
    for (l, v) in family.iter().zip(verdicts) {
        if v? {
            vanishing.push(l.clone());
        }
    }
    Ok(ScanReport { vanishing, scanned: family.len() })
}
