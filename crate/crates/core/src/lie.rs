//! Homogeneous elements of the free Lie ring in Hall coordinates.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::hall::{hall_basis_of_rank, HallTree};
use crate::scalar::Scalar;
use crate::word::Alphabet;

/// An integer (or other exact scalar) combination of Hall trees of one weight.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement<T> {
    weight: usize,
    terms: BTreeMap<HallTree, T>,
}

impl<T: Scalar> LieElement<T> {
    pub fn zero(weight: usize) -> Self {
        LieElement { weight, terms: BTreeMap::new() }
    }

    pub fn generator(g: usize) -> Self {
        Self::basis(HallTree::leaf(g))
    }

    /// A single Hall tree with coefficient one. The tree must be basic.
    pub fn basis(t: HallTree) -> Self {
        debug_assert!(t.is_hall(), "{t} is not a basic commutator");
        let mut terms = BTreeMap::new();
        let weight = t.weight();
        terms.insert(t, T::one());
        LieElement { weight, terms }
    }

    pub fn from_terms(weight: usize, terms: impl IntoIterator<Item = (HallTree, T)>) -> Self {
        let mut e = Self::zero(weight);
        for (t, c) in terms {
            assert_eq!(t.weight(), weight, "inhomogeneous term {t}");
            e.add_term(t, c);
        }
        e
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HallTree, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: &HallTree) -> T {
        self.terms.get(t).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, t: HallTree, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&t);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, other: &LieElement<T>, c: &T) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        assert_eq!(self.weight, other.weight, "adding Lie elements of different weight");
        for (t, v) in &other.terms {
            self.add_term(t.clone(), v.clone() * c.clone());
        }
    }

    pub fn add(&self, other: &LieElement<T>) -> LieElement<T> {
        let mut e = self.clone();
        e.add_scaled(other, &T::one());
        e
    }

    pub fn sub(&self, other: &LieElement<T>) -> LieElement<T> {
        let mut e = self.clone();
        e.add_scaled(other, &-T::one());
        e
    }

    pub fn neg(&self) -> LieElement<T> {
        self.scale(&-T::one())
    }

    pub fn scale(&self, c: &T) -> LieElement<T> {
        let mut e = Self::zero(self.weight);
        for (t, v) in &self.terms {
            e.add_term(t.clone(), v.clone() * c.clone());
        }
        e
    }

    pub fn map_scalars<U: Scalar>(&self, f: impl Fn(&T) -> U) -> LieElement<U> {
        let mut e = LieElement::zero(self.weight);
        for (t, v) in &self.terms {
            e.add_term(t.clone(), f(v));
        }
        e
    }

    /// Coordinates in the Hall basis of the given rank, as (position, coefficient).
    pub fn coordinates(&self, rank: usize) -> Vec<(usize, T)> {
        let basis = hall_basis_of_rank(self.weight, rank);
        self.terms
            .iter()
            .map(|(t, c)| {
                let i = basis.position(t).unwrap_or_else(|| panic!("{t} is not a basis tree of rank {rank}"));
                (i, c.clone())
            })
            .collect()
    }

    pub fn from_coordinates(weight: usize, rank: usize, coords: impl IntoIterator<Item = (usize, T)>) -> Self {
        let basis = hall_basis_of_rank(weight, rank);
        let mut e = Self::zero(weight);
        for (i, c) in coords {
            e.add_term(basis.trees()[i].clone(), c);
        }
        e
    }

    /// Human-readable form such as `-[b1,a1] + 2[[b1,a1],b2]`.
    pub fn format(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let s = format!("{c}");
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if mag != "1" {
                out.push_str(&mag);
            }
            out.push_str(&t.format(alphabet));
        }
        out
    }
}

type BracketCache = RwLock<HashMap<(HallTree, HallTree), Arc<LieElement<BigInt>>>>;

fn bracket_cache() -> &'static BracketCache {
    static CACHE: OnceLock<BracketCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `[u, v]` of two basic commutators, rewritten into the Hall basis.
pub fn bracket_trees(u: &HallTree, v: &HallTree) -> Arc<LieElement<BigInt>> {
    let key = (u.clone(), v.clone());
    if let Some(e) = bracket_cache().read().unwrap().get(&key) {
        return e.clone();
    }
    let result = Arc::new(bracket_trees_uncached(u, v));
    bracket_cache().write().unwrap().insert(key, result.clone());
    result
}

fn bracket_trees_uncached(u: &HallTree, v: &HallTree) -> LieElement<BigInt> {
    let weight = u.weight() + v.weight();
    if u == v {
        return LieElement::zero(weight);
    }
    if u < v {
        return bracket_trees(v, u).neg();
    }
    match u.children() {
        Some((u1, u2)) if u2 > v => {
            // [[u1,u2],v] = [[u1,v],u2] + [u1,[u2,v]]
            let mut out = LieElement::zero(weight);
            let inner = bracket_trees(u1, v);
            for (t, c) in inner.terms() {
                out.add_scaled(&bracket_trees(t, u2), c);
            }
            let inner = bracket_trees(u2, v);
            for (t, c) in inner.terms() {
                out.add_scaled(&bracket_trees(u1, t), c);
            }
            out
        }
        _ => LieElement::basis(HallTree::pair(u.clone(), v.clone())),
    }
}

/// Bilinear extension of the tree bracket.
pub fn bracket<T: Scalar>(e1: &LieElement<T>, e2: &LieElement<T>) -> LieElement<T> {
    let mut out = LieElement::zero(e1.weight + e2.weight);
    for (t1, c1) in &e1.terms {
        for (t2, c2) in &e2.terms {
            let c = c1.clone() * c2.clone();
            for (t, b) in bracket_trees(t1, t2).terms() {
                out.add_term(t.clone(), T::from_bigint(b) * c.clone());
            }
        }
    }
    out
}

/// Hall-basis expansion of an arbitrary bracketed tree.
pub fn normalize_tree<T: Scalar>(t: &HallTree) -> LieElement<T> {
    match t.children() {
        None => LieElement::basis(t.clone()),
        Some((l, r)) => bracket(&normalize_tree(l), &normalize_tree(r)),
    }
}

/// Image under the linear substitution `generator i ↦ images[i]` (weight-one
/// elements), extended to brackets.
pub fn substitute<T: Scalar>(e: &LieElement<T>, images: &[LieElement<T>]) -> LieElement<T> {
    fn tree<T: Scalar>(t: &HallTree, images: &[LieElement<T>], memo: &mut HashMap<HallTree, LieElement<T>>) -> LieElement<T> {
        if let Some(v) = memo.get(t) {
            return v.clone();
        }
        let v = match t.children() {
            None => images[t.as_leaf().unwrap()].clone(),
            Some((l, r)) => bracket(&tree(l, images, memo), &tree(r, images, memo)),
        };
        memo.insert(t.clone(), v.clone());
        v
    }
    let mut memo = HashMap::new();
    let mut out = LieElement::zero(e.weight);
    for (t, c) in &e.terms {
        out.add_scaled(&tree(t, images, &mut memo), c);
    }
    out
}
