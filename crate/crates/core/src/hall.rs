//! Basic commutators (Hall trees), their fixed total order, and the Witt formula.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::word::{commutator, Alphabet, Word};

#[derive(Debug)]
enum Node {
    Leaf(usize),
    Pair { left: HallTree, right: HallTree, weight: usize, hash: u64 },
}

/// A bracketed word: a leaf or `[left, right]`. Ordered by weight, then leaf
/// index for leaves, then left subtree, then right subtree.
#[derive(Clone, Debug)]
pub struct HallTree(Arc<Node>);

impl HallTree {
    pub fn leaf(generator: usize) -> Self {
        HallTree(Arc::new(Node::Leaf(generator)))
    }

    /// The formal bracket `[left, right]`, without any Hall normalization.
    pub fn pair(left: HallTree, right: HallTree) -> Self {
        let weight = left.weight() + right.weight();
        let mut h = std::collections::hash_map::DefaultHasher::new();
        left.hash(&mut h);
        right.hash(&mut h);
        let hash = h.finish();
        HallTree(Arc::new(Node::Pair { left, right, weight, hash }))
    }

    pub fn weight(&self) -> usize {
        match &*self.0 {
            Node::Leaf(_) => 1,
            Node::Pair { weight, .. } => *weight,
        }
    }

    pub fn as_leaf(&self) -> Option<usize> {
        match &*self.0 {
            Node::Leaf(g) => Some(*g),
            Node::Pair { .. } => None,
        }
    }

    pub fn children(&self) -> Option<(&HallTree, &HallTree)> {
        match &*self.0 {
            Node::Leaf(_) => None,
            Node::Pair { left, right, .. } => Some((left, right)),
        }
    }

    /// Whether this tree is a basic commutator under the fixed order.
    pub fn is_hall(&self) -> bool {
        match self.children() {
            None => true,
            Some((l, r)) => {
                l.is_hall()
                    && r.is_hall()
                    && l > r
                    && l.children().is_none_or(|(_, l2)| l2 <= r)
            }
        }
    }

    /// Leaves from left to right.
    pub fn foliage(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match &*self.0 {
            Node::Leaf(g) => out.push(*g),
            Node::Pair { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    /// Number of leaves satisfying `pred`.
    pub fn count_leaves(&self, pred: &impl Fn(usize) -> bool) -> usize {
        match &*self.0 {
            Node::Leaf(g) => usize::from(pred(*g)),
            Node::Pair { left, right, .. } => left.count_leaves(pred) + right.count_leaves(pred),
        }
    }

    /// Leaf ↦ generator, node ↦ group commutator of the lifts.
    pub fn lift(&self) -> Word {
        match self.children() {
            None => Word::generator(self.as_leaf().unwrap()),
            Some((l, r)) => commutator(&l.lift(), &r.lift()),
        }
    }

    pub fn max_generator(&self) -> usize {
        self.foliage().into_iter().max().unwrap_or(0)
    }

    /// Nested `[b1,a1]` notation.
    pub fn format(&self, alphabet: &Alphabet) -> String {
        match self.children() {
            None => alphabet.name(self.as_leaf().unwrap()).to_string(),
            Some((l, r)) => format!("[{},{}]", l.format(alphabet), r.format(alphabet)),
        }
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<HallTree> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let t = parse_tree(&chars, &mut pos, alphabet)?;
        if pos != chars.len() {
            return Err(Error::Parse(format!("trailing input in `{text}`")));
        }
        Ok(t)
    }
}

fn parse_tree(s: &[char], pos: &mut usize, alphabet: &Alphabet) -> Result<HallTree> {
    if s.get(*pos) == Some(&'[') {
        *pos += 1;
        let l = parse_tree(s, pos, alphabet)?;
        if s.get(*pos) != Some(&',') {
            return Err(Error::Parse("expected `,` in bracket".into()));
        }
        *pos += 1;
        let r = parse_tree(s, pos, alphabet)?;
        if s.get(*pos) != Some(&']') {
            return Err(Error::Parse("expected `]` in bracket".into()));
        }
        *pos += 1;
        Ok(HallTree::pair(l, r))
    } else {
        let start = *pos;
        while *pos < s.len() && !"[],".contains(s[*pos]) {
            *pos += 1;
        }
        let name: String = s[start..*pos].iter().collect();
        if name.is_empty() {
            return Err(Error::Parse("empty leaf".into()));
        }
        Ok(HallTree::leaf(alphabet.lookup(&name)?))
    }
}

impl PartialEq for HallTree {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Node::Leaf(a), Node::Leaf(b)) => a == b,
            (
                Node::Pair { left: l1, right: r1, hash: h1, .. },
                Node::Pair { left: l2, right: r2, hash: h2, .. },
            ) => h1 == h2 && l1 == l2 && r1 == r2,
            _ => false,
        }
    }
}

impl Eq for HallTree {}

impl Hash for HallTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &*self.0 {
            Node::Leaf(g) => {
                0u8.hash(state);
                g.hash(state);
            }
            Node::Pair { hash, .. } => {
                1u8.hash(state);
                hash.hash(state);
            }
        }
    }
}

impl Ord for HallTree {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.weight().cmp(&other.weight()).then_with(|| match (&*self.0, &*other.0) {
            (Node::Leaf(a), Node::Leaf(b)) => a.cmp(b),
            (Node::Pair { left: l1, right: r1, .. }, Node::Pair { left: l2, right: r2, .. }) => {
                l1.cmp(l2).then_with(|| r1.cmp(r2))
            }
            // equal weights imply both leaves or both pairs
            _ => unreachable!(),
        })
    }
}

impl PartialOrd for HallTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HallTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.children() {
            None => write!(f, "x{}", self.as_leaf().unwrap()),
            Some((l, r)) => write!(f, "[{l},{r}]"),
        }
    }
}

/// The weight-`k` basic commutators on `rank` letters, sorted, with a lookup
/// table from tree to position.
#[derive(Debug)]
pub struct HallBasis {
    pub weight: usize,
    pub rank: usize,
    trees: Vec<HallTree>,
    index: HashMap<HallTree, usize>,
}

impl HallBasis {
    pub fn trees(&self) -> &[HallTree] {
        &self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn position(&self, t: &HallTree) -> Option<usize> {
        self.index.get(t).copied()
    }
}

type BasisCache = RwLock<HashMap<(usize, usize), Arc<HallBasis>>>;

fn basis_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized Hall basis of weight `k` on `rank` letters.
pub fn hall_basis_of_rank(k: usize, rank: usize) -> Arc<HallBasis> {
    assert!(k >= 1, "Hall basis weight must be positive");
    if let Some(b) = basis_cache().read().unwrap().get(&(k, rank)) {
        return b.clone();
    }
    let mut trees: Vec<HallTree> = if k == 1 {
        (0..rank).map(HallTree::leaf).collect()
    } else {
        let mut out = Vec::new();
        for wl in (k.div_ceil(2))..k {
            let wr = k - wl;
            let lefts = hall_basis_of_rank(wl, rank);
            let rights = hall_basis_of_rank(wr, rank);
            for l in lefts.trees() {
                for r in rights.trees() {
                    if l > r && l.children().is_none_or(|(_, l2)| l2 <= r) {
                        out.push(HallTree::pair(l.clone(), r.clone()));
                    }
                }
            }
        }
        out
    };
    trees.sort();
    let index = trees.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let basis = Arc::new(HallBasis { weight: k, rank, trees, index });
    basis_cache().write().unwrap().insert((k, rank), basis.clone());
    basis
}

/// Hall basis of weight `k` over the given alphabet.
pub fn hall_basis(k: usize, alphabet: &Alphabet) -> Vec<HallTree> {
    hall_basis_of_rank(k, alphabet.len()).trees().to_vec()
}

/// Möbius function.
pub fn mobius(d: u64) -> i32 {
    assert!(d >= 1, "mobius is defined for positive integers");
    let mut n = d;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Witt's necklace count `(1/k) Σ_{d|k} μ(d) g^{k/d}`: the rank of the
/// weight-`k` part of the free Lie ring on `g` generators.
pub fn witt(k: u64, g: u64) -> BigInt {
    assert!(k >= 1, "witt is defined for positive weight");
    let base = BigInt::from(g);
    let mut sum = BigInt::zero();
    for d in 1..=k {
        if k.is_multiple_of(d) {
            let mu = mobius(d);
            if mu != 0 {
                let term: BigInt = Pow::pow(&base, (k / d) as u32);
                if mu > 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(k));
    debug_assert!(r.is_zero());
    q
}

/// `n choose r` as a big integer.
pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
