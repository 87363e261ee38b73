//! Incremental sparse integer row echelon form with tracked combinations.
//!
//! Rows are kept in insertion order; row `i` vanishes at the pivot columns of
//! all earlier rows. Pivots are positive. Every row records its expression as
//! an integer combination of the inserted vectors (by id).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type SparseVec = BTreeMap<usize, BigInt>;

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    entries: SparseVec,
    combo: SparseVec,
}

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<Row>,
    /// Set once a row had to be replaced by a gcd combination.
    used_gcd: bool,
}

/// `a += c·b`
pub fn axpy(a: &mut SparseVec, c: &BigInt, b: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, v) in b {
        let e = a.entry(*k).or_insert_with(BigInt::zero);
        *e += c * v;
        if e.is_zero() {
            a.remove(k);
        }
    }
}

fn scaled(c: &BigInt, a: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    a.iter().map(|(k, v)| (*k, c * v)).collect()
}

/// `c1·a + c2·b`
fn combine(c1: &BigInt, a: &SparseVec, c2: &BigInt, b: &SparseVec) -> SparseVec {
    let mut out = scaled(c1, a);
    axpy(&mut out, c2, b);
    out
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn used_gcd(&self) -> bool {
        self.used_gcd
    }

    pub fn pivots(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.rows.iter().map(|r| (r.pivot, &r.entries[&r.pivot]))
    }

    pub fn is_unimodular(&self) -> bool {
        self.pivots().all(|(_, p)| p.is_one())
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.iter().map(|r| &r.entries)
    }

    /// Adds vector `v` with identifier `id`; returns whether the rank grew.
    pub fn insert(&mut self, id: usize, mut v: SparseVec) -> bool {
        let mut combo: SparseVec = [(id, BigInt::one())].into_iter().collect();
        for r in 0..self.rows.len() {
            let p = self.rows[r].pivot;
            let Some(b) = v.get(&p).cloned() else { continue };
            let a = self.rows[r].entries[&p].clone();
            if b.is_multiple_of(&a) {
                let q = -(b / &a);
                axpy(&mut v, &q, &self.rows[r].entries);
                axpy(&mut combo, &q, &self.rows[r].combo);
            } else {
                let e = a.extended_gcd(&b);
                let (g, s, t) = (e.gcd, e.x, e.y);
                let row = &self.rows[r];
                let new_entries = combine(&s, &row.entries, &t, &v);
                let new_combo = combine(&s, &row.combo, &t, &combo);
                let (ag, bg) = (&a / &g, &b / &g);
                v = combine(&ag, &v, &-bg.clone(), &row.entries);
                combo = combine(&ag, &combo, &-bg, &row.combo);
                let row = &mut self.rows[r];
                row.entries = new_entries;
                row.combo = new_combo;
                if row.entries[&p].is_negative() {
                    row.entries.values_mut().for_each(|x| *x = -x.clone());
                    row.combo.values_mut().for_each(|x| *x = -x.clone());
                }
                self.used_gcd = true;
            }
        }
        if v.is_empty() {
            return false;
        }
        let pivot = v
            .iter()
            .find(|(_, c)| c.abs().is_one())
            .or_else(|| v.iter().next())
            .map(|(k, _)| *k)
            .unwrap();
        if v[&pivot].is_negative() {
            v.values_mut().for_each(|x| *x = -x.clone());
            combo.values_mut().for_each(|x| *x = -x.clone());
        }
        self.rows.push(Row { pivot, entries: v, combo });
        true
    }

    /// Canonical remainder of `v` modulo the row lattice, together with the
    /// combination `c` (over inserted ids) with `v = remainder + Σ c_id · vector_id`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut combo = SparseVec::new();
        for row in &self.rows {
            let Some(b) = v.get(&row.pivot).cloned() else { continue };
            let q = b.div_floor(&row.entries[&row.pivot]);
            if !q.is_zero() {
                axpy(&mut v, &-q.clone(), &row.entries);
                axpy(&mut combo, &q, &row.combo);
            }
        }
        (v, combo)
    }

    /// The combination of inserted vectors equal to `v`, if `v` lies in the lattice.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        let (rest, combo) = self.reduce(v);
        rest.is_empty().then_some(combo)
    }
}
