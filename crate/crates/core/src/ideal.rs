//! Graded ideals of the free Lie ring, spanned weight by weight, with a group
//! word lifting every spanning vector.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::echelon::{Echelon, SparseVec};
use crate::error::{Error, Result};
use crate::hall::{hall_basis_of_rank, HallTree};
use crate::lie::bracket;
use crate::matrix::{smith, Matrix};
use crate::word::{commutator, Word};
use crate::LieElement;

/// A Lie generator of an ideal together with a group word whose leading
/// class is that generator.
#[derive(Clone, Debug)]
pub struct IdealGenerator {
    pub element: LieElement,
    pub lift: Word,
}

/// A spanning vector of the ideal at one weight.
#[derive(Clone, Debug)]
pub struct SpanVector {
    pub element: LieElement,
    pub lift: Word,
}

/// The ideal's weight-`k` lattice in Hall coordinates, split by the grading.
#[derive(Debug)]
pub struct WeightSpan {
    pub weight: usize,
    pub vectors: Vec<SpanVector>,
    blocks: BTreeMap<usize, Echelon>,
    /// Ids of vectors that raised the rank when inserted.
    selected: Vec<usize>,
    torsion: Vec<BigInt>,
}

impl WeightSpan {
    pub fn rank(&self) -> usize {
        self.blocks.values().map(Echelon::rank).sum()
    }

    /// Elementary divisors above one found in any block.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }
}

/// An ideal generated by homogeneous elements. When a marking of the
/// generators is given and every ideal generator has a fixed number of marked
/// leaves, spans are computed block by block in that count.
#[derive(Debug)]
pub struct GradedIdeal {
    rank: usize,
    marked: Option<Vec<bool>>,
    generators: Vec<IdealGenerator>,
    spans: Mutex<Vec<Arc<WeightSpan>>>,
}

/// A Lie element reduced modulo an ideal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotientClass {
    pub weight: usize,
    #[serde(skip)]
    pub normal_form: LieElement,
    /// Rank of the weight-`k` quotient.
    pub quotient_rank: usize,
    /// Rank of the ideal at weight `k`.
    pub ideal_rank: usize,
    #[serde(serialize_with = "crate::io::ser_bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl QuotientClass {
    pub fn is_zero(&self) -> bool {
        self.normal_form.is_zero()
    }
}

/// Lie element as a sparse coordinate vector in the Hall basis.
pub(crate) fn to_sparse(e: &LieElement, rank: usize) -> SparseVec {
    e.coordinates(rank).into_iter().collect()
}

pub(crate) fn from_sparse(weight: usize, rank: usize, v: &SparseVec) -> LieElement {
    LieElement::from_coordinates(weight, rank, v.iter().map(|(k, c)| (*k, c.clone())))
}

impl GradedIdeal {
    pub fn new(rank: usize, generators: Vec<IdealGenerator>, marked: Option<Vec<bool>>) -> Result<Self> {
        for g in &generators {
            if g.element.is_zero() {
                return Err(Error::InvalidArgument("ideal generator is zero".into()));
            }
            if g.element.terms().any(|(t, _)| t.max_generator() >= rank) {
                return Err(Error::InvalidArgument("ideal generator uses letters outside the rank".into()));
            }
        }
        let marked = marked.filter(|m| {
            m.len() == rank && generators.iter().all(|g| grade_of(&g.element, m).is_some())
        });
        Ok(GradedIdeal { rank, marked, generators, spans: Mutex::new(Vec::new()) })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[IdealGenerator] {
        &self.generators
    }

    fn tree_grade(&self, t: &HallTree) -> usize {
        match &self.marked {
            Some(m) => t.count_leaves(&|g| m[g]),
            None => 0,
        }
    }

    /// The weight-`k` span, computing lower weights as needed.
    pub fn span(&self, k: usize) -> Arc<WeightSpan> {
        assert!(k >= 1, "ideal weights start at 1");
        let mut spans = self.spans.lock().unwrap();
        while spans.len() < k {
            let next = self.extend(spans.last().map(Arc::as_ref), spans.len() + 1);
            spans.push(Arc::new(next));
        }
        spans[k - 1].clone()
    }

    fn extend(&self, prev: Option<&WeightSpan>, k: usize) -> WeightSpan {
        let mut vectors = Vec::new();
        if let Some(prev) = prev {
            let use_all = prev.blocks.values().any(Echelon::used_gcd);
            let parents: Vec<usize> = if use_all { (0..prev.vectors.len()).collect() } else { prev.selected.clone() };
            for &p in &parents {
                let parent = &prev.vectors[p];
                for x in 0..self.rank {
                    let element = bracket(&parent.element, &LieElement::generator(x));
                    if !element.is_zero() {
                        vectors.push(SpanVector { element, lift: commutator(&parent.lift, &Word::generator(x)) });
                    }
                }
            }
        }
        for g in self.generators.iter().filter(|g| g.element.weight() == k) {
            vectors.push(SpanVector { element: g.element.clone(), lift: g.lift.clone() });
        }
        let mut blocks: BTreeMap<usize, Echelon> = BTreeMap::new();
        let mut selected = Vec::new();
        for (id, v) in vectors.iter().enumerate() {
            let grade = v.element.terms().next().map_or(0, |(t, _)| self.tree_grade(t));
            if blocks.entry(grade).or_default().insert(id, to_sparse(&v.element, self.rank)) {
                selected.push(id);
            }
        }
        let torsion = blocks.values().filter(|b| !b.is_unimodular()).flat_map(block_torsion).collect();
        WeightSpan { weight: k, vectors, blocks, selected, torsion }
    }

    pub fn ideal_rank(&self, k: usize) -> usize {
        self.span(k).rank()
    }

    /// Rank of the weight-`k` quotient of the free Lie ring by the ideal.
    pub fn quotient_rank(&self, k: usize) -> usize {
        hall_basis_of_rank(k, self.rank).len() - self.ideal_rank(k)
    }

    fn split_by_grade(&self, e: &LieElement) -> BTreeMap<usize, SparseVec> {
        let basis = hall_basis_of_rank(e.weight(), self.rank);
        let mut parts: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (t, c) in e.terms() {
            let pos = basis.position(t).expect("Hall tree of matching rank");
            parts.entry(self.tree_grade(t)).or_default().insert(pos, c.clone());
        }
        parts
    }

    /// Canonical normal form of `e` modulo the ideal.
    pub fn reduce(&self, e: &LieElement) -> QuotientClass {
        let k = e.weight();
        let span = self.span(k);
        let mut out = SparseVec::new();
        for (grade, part) in self.split_by_grade(e) {
            let rest = match span.blocks.get(&grade) {
                Some(b) => b.reduce(&part).0,
                None => part,
            };
            out.extend(rest);
        }
        QuotientClass {
            weight: k,
            normal_form: from_sparse(k, self.rank, &out),
            quotient_rank: hall_basis_of_rank(k, self.rank).len() - span.rank(),
            ideal_rank: span.rank(),
            torsion: span.torsion.clone(),
        }
    }

    /// Coefficients `c` with `e = Σ c_i · vectors[i]` over the weight span,
    /// or `None` when `e` is not in the ideal.
    pub fn express(&self, e: &LieElement) -> Option<Vec<(usize, BigInt)>> {
        let span = self.span(e.weight());
        let mut combo = SparseVec::new();
        for (grade, part) in self.split_by_grade(e) {
            let c = span.blocks.get(&grade)?.express(&part)?;
            combo.extend(c);
        }
        Some(combo.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

fn grade_of(e: &LieElement, marked: &[bool]) -> Option<usize> {
    let mut grades = e.terms().map(|(t, _)| t.count_leaves(&|g| marked[g]));
    let first = grades.next()?;
    grades.all(|g| g == first).then_some(first)
}

fn block_torsion(b: &Echelon) -> Vec<BigInt> {
    let rows: Vec<&SparseVec> = b.row_vectors().collect();
    let cols: Vec<usize> = {
        let mut c: Vec<usize> = rows.iter().flat_map(|r| r.keys().copied()).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    let mut m = Matrix::<BigInt>::zeros(rows.len(), cols.len());
    for (i, r) in rows.iter().enumerate() {
        for (k, v) in r.iter() {
            m.set(i, cols.binary_search(k).unwrap(), v.clone());
        }
    }
    smith(&m).divisors.into_iter().filter(|d| !d.is_one()).collect()
}

/// Normal form modulo an ideal, failing loudly when the quotient has torsion.
pub fn quotient_reduce(e: &LieElement, ideal: &GradedIdeal) -> Result<QuotientClass> {
    let q = ideal.reduce(e);
    if q.torsion.is_empty() {
        Ok(q)
    } else {
        Err(Error::Torsion(q.torsion.iter().map(ToString::to_string).collect()))
    }
}
