//! Truncated Magnus expansions and the leading-term map from the lower
//! central series to the free Lie ring.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lie::{bracket, LieElement};
use crate::scalar::Scalar;
use crate::word::{GroupEndomorphism, Letter, Word};
use crate::Depth;

/// `Σ c_m X_m` over noncommutative monomials of length at most `cap`.
/// Degree `d` is stored densely; monomial `X_{i1}⋯X_{id}` sits at the base-`rank`
/// index `i1 i2 … id`, so index order is lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct MagnusSeries<T> {
    rank: usize,
    cap: usize,
    degrees: Vec<Vec<T>>,
}

impl<T: Scalar> MagnusSeries<T> {
    pub fn one(rank: usize, cap: usize) -> Self {
        let degrees = (0..=cap)
            .map(|d| {
                let mut v = vec![T::zero(); rank.pow(d as u32)];
                if d == 0 {
                    v[0] = T::one();
                }
                v
            })
            .collect();
        MagnusSeries { rank, cap, degrees }
    }

    pub fn of_word(w: &Word, rank: usize, cap: usize) -> Self {
        assert!(w.support_rank() <= rank, "word uses generators outside rank {rank}");
        let mut s = Self::one(rank, cap);
        for &l in w.letters() {
            s.mul_letter(l);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn degree(&self, d: usize) -> &[T] {
        &self.degrees[d]
    }

    pub fn coefficient(&self, monomial: &[usize]) -> T {
        if monomial.len() > self.cap {
            return T::zero();
        }
        let idx = monomial.iter().fold(0usize, |acc, &i| acc * self.rank + i);
        self.degrees[monomial.len()][idx].clone()
    }

    /// Right multiplication by the image of one letter.
    pub fn mul_letter(&mut self, l: Letter) {
        let n = self.rank;
        let i = l.generator;
        if l.inverse {
            // S' (1 + X) = S, solved degree by degree
            for d in 1..=self.cap {
                let (lo, hi) = self.degrees.split_at_mut(d);
                let prev = &lo[d - 1];
                let cur = &mut hi[0];
                for (m, c) in prev.iter().enumerate() {
                    if !c.is_zero() {
                        let e = &mut cur[m * n + i];
                        *e = e.clone() - c.clone();
                    }
                }
            }
        } else {
            for d in (1..=self.cap).rev() {
                let (lo, hi) = self.degrees.split_at_mut(d);
                let prev = &lo[d - 1];
                let cur = &mut hi[0];
                for (m, c) in prev.iter().enumerate() {
                    if !c.is_zero() {
                        let e = &mut cur[m * n + i];
                        *e = e.clone() + c.clone();
                    }
                }
            }
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &MagnusSeries<T>) -> MagnusSeries<T> {
        assert_eq!(self.rank, other.rank);
        let cap = self.cap.min(other.cap);
        let n = self.rank;
        let mut out = Self::one(n, cap);
        out.degrees[0][0] = T::zero();
        for d in 0..=cap {
            for j in 0..=d {
                let right = &other.degrees[d - j];
                let width = right.len();
                for (a, ca) in self.degrees[j].iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (b, cb) in right.iter().enumerate() {
                        if !cb.is_zero() {
                            let e = &mut out.degrees[d][a * width + b];
                            *e = e.clone() + ca.clone() * cb.clone();
                        }
                    }
                }
            }
        }
        out
    }

    /// Least positive degree with a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<usize> {
        (1..=self.cap).find(|&d| self.degrees[d].iter().any(|c| !c.is_zero()))
    }

    pub fn is_one(&self) -> bool {
        self.lowest_degree().is_none()
    }

    /// The degree-`k` component as a Lie element, assuming the lower positive
    /// degrees vanish.
    pub fn lie_component(&self, k: usize) -> Result<LieElement<T>> {
        if k == 0 || k > self.cap {
            return Err(Error::Precondition(format!("weight {k} outside 1..={}", self.cap)));
        }
        if let Some(d) = self.lowest_degree().filter(|&d| d < k) {
            return Err(Error::WeightTooLow { required: k, found: Depth::Exact(d) });
        }
        lie_from_homogeneous(&self.degrees[k], self.rank, k)
    }
}

/// Re-expresses a homogeneous Lie polynomial of degree `k` (dense, base-`rank`
/// indices) in the Hall basis. Works by peeling off Lyndon standard-bracket
/// expansions (triangular in lexicographic order with unit leading
/// coefficient), then converting each Lyndon bracket to Hall coordinates.
pub fn lie_from_homogeneous<T: Scalar>(component: &[T], rank: usize, k: usize) -> Result<LieElement<T>> {
    let mut rest: BTreeMap<u64, T> = component
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u64, c.clone()))
        .collect();
    let mut out = LieElement::zero(k);
    while let Some((&m, c)) = rest.iter().next() {
        let c = c.clone();
        let word = decode(m, rank, k);
        if !is_lyndon(&word) {
            return Err(Error::Precondition(format!(
                "degree-{k} component is not a Lie polynomial (leading monomial {word:?})"
            )));
        }
        for &(idx, e) in lyndon_expansion(&word, rank).iter() {
            let delta = c.clone() * T::from_i64(e);
            let entry = rest.entry(idx).or_insert_with(T::zero);
            let v = entry.clone() - delta;
            if v.is_zero() {
                rest.remove(&idx);
            } else {
                *entry = v;
            }
        }
        out.add_scaled(&lyndon_hall_form(&word).map_scalars(|b| T::from_bigint(b)), &c);
    }
    Ok(out)
}

fn decode(mut m: u64, rank: usize, k: usize) -> Vec<usize> {
    let mut w = vec![0; k];
    for slot in w.iter_mut().rev() {
        *slot = (m % rank as u64) as usize;
        m /= rank as u64;
    }
    w
}

fn is_lyndon(w: &[usize]) -> bool {
    (1..w.len()).all(|i| w[i..] > *w)
}

/// `w = u v` with `v` the longest proper Lyndon suffix.
fn standard_factorization(w: &[usize]) -> (&[usize], &[usize]) {
    let i = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("word of length ≥ 2");
    w.split_at(i)
}

type Expansion = Arc<Vec<(u64, i64)>>;
type ExpansionCache = RwLock<HashMap<(usize, Vec<usize>), Expansion>>;
type HallFormCache = RwLock<HashMap<Vec<usize>, Arc<LieElement<BigInt>>>>;

fn expansion_cache() -> &'static ExpansionCache {
    static CACHE: OnceLock<ExpansionCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn hall_form_cache() -> &'static HallFormCache {
    static CACHE: OnceLock<HallFormCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Associative expansion of the standard bracketing of a Lyndon word.
fn lyndon_expansion(w: &[usize], rank: usize) -> Expansion {
    let key = (rank, w.to_vec());
    if let Some(e) = expansion_cache().read().unwrap().get(&key) {
        return e.clone();
    }
    let result = if w.len() == 1 {
        vec![(w[0] as u64, 1)]
    } else {
        let (u, v) = standard_factorization(w);
        let (eu, ev) = (lyndon_expansion(u, rank), lyndon_expansion(v, rank));
        let shift_v = (rank as u64).pow(v.len() as u32);
        let shift_u = (rank as u64).pow(u.len() as u32);
        let mut acc: HashMap<u64, i64> = HashMap::new();
        for &(a, ca) in eu.iter() {
            for &(b, cb) in ev.iter() {
                let p = ca.checked_mul(cb).expect("Lyndon expansion overflow");
                *acc.entry(a * shift_v + b).or_default() += p;
                *acc.entry(b * shift_u + a).or_default() -= p;
            }
        }
        let mut v: Vec<(u64, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        v.sort_unstable();
        v
    };
    let result = Arc::new(result);
    expansion_cache().write().unwrap().insert(key, result.clone());
    result
}

/// Hall coordinates of the standard bracketing of a Lyndon word.
fn lyndon_hall_form(w: &[usize]) -> Arc<LieElement<BigInt>> {
    if let Some(e) = hall_form_cache().read().unwrap().get(w) {
        return e.clone();
    }
    let result = if w.len() == 1 {
        LieElement::generator(w[0])
    } else {
        let (u, v) = standard_factorization(w);
        bracket(&lyndon_hall_form(u), &lyndon_hall_form(v))
    };
    let result = Arc::new(result);
    hall_form_cache().write().unwrap().insert(w.to_vec(), result.clone());
    result
}

/// Magnus expansion over the integers, truncated at degree `cap`.
pub fn magnus(w: &Word, rank: usize, cap: usize) -> MagnusSeries<BigInt> {
    MagnusSeries::of_word(w, rank, cap)
}

/// The class of `w ∈ F_k` in the weight-`k` part of the free Lie ring.
pub fn lie_class_at(w: &Word, k: usize, cap: usize) -> Result<LieElement<BigInt>> {
    if k == 0 || k > cap {
        return Err(Error::Precondition(format!("weight {k} must lie in 1..={cap}")));
    }
    let rank = w.support_rank().max(1);
    MagnusSeries::<BigInt>::of_word(w, rank, k).lie_component(k)
}

/// Lower bound on |coefficients| small enough for i128 arithmetic.
fn fits_i128(len: usize, cap: usize) -> bool {
    // coefficients of degree d are bounded by binom(len + d, d) ≤ (len + d)^d
    let bits = (cap as f64) * ((len + cap).max(2) as f64).log2();
    bits < 120.0
}

/// The least `k ≤ cap` with a nonzero degree-`k` Magnus term; `AtLeast(cap+1)`
/// when the word is trivial up to the cap.
pub fn weight_of(w: &Word, cap: usize) -> Depth {
    let rank = w.support_rank().max(1);
    let low = if fits_i128(w.len(), cap) {
        MagnusSeries::<i128>::of_word(w, rank, cap).lowest_degree()
    } else {
        MagnusSeries::<BigInt>::of_word(w, rank, cap).lowest_degree()
    };
    match low {
        Some(d) => Depth::Exact(d),
        None => Depth::AtLeast(cap + 1),
    }
}

/// The map induced by `φ` on the weight-`i` part of the free Lie ring.
pub fn induced_lie_map(phi: &GroupEndomorphism, e: &LieElement<BigInt>, cap: usize) -> Result<LieElement<BigInt>> {
    let k = e.weight();
    if k > cap {
        return Err(Error::Precondition(format!("weight {k} exceeds cap {cap}")));
    }
    let mut out = LieElement::zero(k);
    for (t, c) in e.terms() {
        let image = phi.apply(&t.lift())?;
        let class = MagnusSeries::<BigInt>::of_word(&image, phi.rank().max(1), k).lie_component(k)?;
        out.add_scaled(&class, c);
    }
    Ok(out)
}
