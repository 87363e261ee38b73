//! Reduced words in a free group and endomorphisms between free groups.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite, totally ordered, duplicate-free set of generator names.
/// Generator `i` is smaller than generator `j` iff `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Arc<Vec<String>>,
    index: Arc<HashMap<String, usize>>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.contains(|c: char| c.is_whitespace() || "[],^".contains(c)) {
                return Err(Error::Parse(format!("invalid generator name `{n}`")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(n.clone()));
            }
        }
        Ok(Alphabet { names: Arc::new(names), index: Arc::new(index) })
    }

    /// `a1 < … < ag < b1 < … < bg`.
    pub fn surface(genus: usize) -> Self {
        let names = (1..=genus)
            .map(|i| format!("a{i}"))
            .chain((1..=genus).map(|i| format!("b{i}")));
        Alphabet::new(names).expect("surface names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.names[generator]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Parses `a1 b1 a1^-1 b1^-1`; `x^n` for any integer `n` is expanded.
    /// The empty string and `1` denote the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" && !self.index.contains_key("1") {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?;
                    (n, e)
                }
                None => (token, 1),
            };
            let g = self.lookup(name)?;
            let letter = if exp < 0 { Letter::inv(g) } else { Letter::gen(g) };
            for _ in 0..exp.unsigned_abs() {
                letters.push(letter);
            }
        }
        Ok(Word::reduce(letters))
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.letters()
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", self.name(l.generator))
                } else {
                    self.name(l.generator).to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn inv(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i32 {
        if self.inverse { -1 } else { 1 }
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::gen(g)])
    }

    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Appends a letter, cancelling against the last one if possible.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverted()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn append(&mut self, other: &Word) {
        for &l in &other.0 {
            self.push(l);
        }
    }

    pub fn append_inverse(&mut self, other: &Word) {
        for &l in other.0.iter().rev() {
            self.push(l.inverted());
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.append(other);
        w
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..n.unsigned_abs() {
            w.append(&base);
        }
        w
    }

    /// `u w u⁻¹`
    pub fn conjugate_by(&self, u: &Word) -> Word {
        let mut w = u.clone();
        w.append(self);
        w.append_inverse(u);
        w
    }

    /// Largest generator index plus one.
    pub fn support_rank(&self) -> usize {
        self.0.iter().map(|l| l.generator + 1).max().unwrap_or(0)
    }

    /// Drops every occurrence of the generators for which `kill` holds.
    pub fn kill(&self, kill: impl Fn(usize) -> bool) -> Word {
        Word::reduce(self.0.iter().copied().filter(|l| !kill(l.generator)))
    }

    /// Cyclically reduced core `c` and prefix `u` with `self = u c u⁻¹`.
    pub fn cyclic_core(&self) -> (Word, Word) {
        let n = self.0.len();
        let mut i = 0;
        while 2 * i + 1 < n && self.0[i] == self.0[n - 1 - i].inverted() {
            i += 1;
        }
        (Word(self.0[..i].to_vec()), Word(self.0[i..n - i].to_vec()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| if l.inverse { format!("x{}^-1", l.generator) } else { format!("x{}", l.generator) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `w₁ w₂ w₁⁻¹ w₂⁻¹`, reduced.
pub fn commutator(w1: &Word, w2: &Word) -> Word {
    let mut w = w1.clone();
    w.append(w2);
    w.append_inverse(w1);
    w.append_inverse(w2);
    w
}

/// An endomorphism of the free group on `images.len()` generators, given by
/// the image of each generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupEndomorphism {
    images: Vec<Word>,
}

impl GroupEndomorphism {
    pub fn identity(rank: usize) -> Self {
        GroupEndomorphism { images: (0..rank).map(Word::generator).collect() }
    }

    pub fn new(images: Vec<Word>) -> Result<Self> {
        let rank = images.len();
        if let Some(w) = images.iter().find(|w| w.support_rank() > rank) {
            return Err(Error::UnknownGenerator(format!("x{}", w.support_rank() - 1)));
        }
        Ok(GroupEndomorphism { images })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, generator: usize) -> &Word {
        &self.images[generator]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Word::empty();
        for l in w.letters() {
            let img = self
                .images
                .get(l.generator)
                .ok_or_else(|| Error::UnknownGenerator(format!("x{}", l.generator)))?;
            if l.inverse {
                out.append_inverse(img);
            } else {
                out.append(img);
            }
        }
        Ok(out)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &GroupEndomorphism) -> Result<GroupEndomorphism> {
        let images = other.images.iter().map(|w| self.apply(w)).collect::<Result<_>>()?;
        Ok(GroupEndomorphism { images })
    }

    /// Conjugation `x ↦ u x u⁻¹` on every generator.
    pub fn inner(rank: usize, u: &Word) -> Self {
        GroupEndomorphism { images: (0..rank).map(|g| Word::generator(g).conjugate_by(u)).collect() }
    }
}
