//! The closed genus-`g` surface group as a one-relator quotient of the free
//! group on `a₁..a_g, b₁..b_g`, with its symplectic and handlebody ideals.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::ideal::{GradedIdeal, IdealGenerator, QuotientClass};
use crate::magnus::MagnusSeries;
use crate::word::{commutator, Alphabet, Word};
use crate::{Depth, LieElement};

/// A weight together with a class, or the statement that the element is
/// trivial through the cap.
#[derive(Clone, Debug, PartialEq)]
pub enum Graded<C> {
    Class { weight: usize, class: C },
    Trivial { cap: usize },
}

impl<C> Graded<C> {
    pub fn weight(&self) -> Depth {
        match self {
            Graded::Class { weight, .. } => Depth::Exact(*weight),
            Graded::Trivial { cap } => Depth::AtLeast(cap + 1),
        }
    }

    pub fn class(&self) -> Option<&C> {
        match self {
            Graded::Class { class, .. } => Some(class),
            Graded::Trivial { .. } => None,
        }
    }
}

/// `[a₁,b₁]⋯[a_g,b_g]`
pub fn standard_relator(genus: usize) -> Word {
    let mut w = Word::empty();
    for i in 0..genus {
        w.append(&commutator(&Word::generator(i), &Word::generator(genus + i)));
    }
    w
}

/// `(a₁⁻¹b₁a₁)⋯(a_g⁻¹b_ga_g)·(b₁⋯b_g)⁻¹`, the boundary word fixed by every
/// braid automorphism `bᵢ ↦ λᵢbᵢλᵢ⁻¹, aᵢ ↦ λᵢaᵢ`.
pub fn braid_boundary(genus: usize) -> Word {
    let mut w = Word::empty();
    for i in 0..genus {
        w.append(&Word::generator(genus + i).conjugate_by(&Word::generator(i).inverse()));
    }
    let mut bs = Word::empty();
    for i in 0..genus {
        bs.append(&Word::generator(genus + i));
    }
    w.append_inverse(&bs);
    w
}

/// `Σᵢ [αᵢ, βᵢ]` in Hall coordinates.
pub fn symplectic_class(genus: usize) -> LieElement {
    let mut e = LieElement::zero(2);
    for i in 0..genus {
        e = e.add(&crate::lie::bracket(&LieElement::generator(i), &LieElement::generator(genus + i)));
    }
    e
}

type SeriesKey = (usize, usize, bool, usize);

#[derive(Debug)]
pub struct SurfaceModel {
    genus: usize,
    alphabet: Alphabet,
    relator: Word,
    symplectic: GradedIdeal,
    handlebody: GradedIdeal,
    lift_series: Mutex<HashMap<SeriesKey, Arc<MagnusSeries<BigInt>>>>,
}

impl SurfaceModel {
    /// The model with relator `[a₁,b₁]⋯[a_g,b_g]`.
    pub fn new(genus: usize) -> Self {
        Self::with_relator(genus, standard_relator(genus)).expect("standard relator is valid")
    }

    /// A model whose relator is any word with weight-2 class `±Ω`.
    pub fn with_relator(genus: usize, relator: Word) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidArgument("genus must be positive".into()));
        }
        let n = 2 * genus;
        if relator.support_rank() > n {
            return Err(Error::InvalidArgument("relator uses letters outside the surface alphabet".into()));
        }
        let class = MagnusSeries::<BigInt>::of_word(&relator, n, 2).lie_component(2)?;
        let omega = symplectic_class(genus);
        if class != omega && class != omega.neg() {
            return Err(Error::InvalidArgument("relator class is not ±Ω".into()));
        }
        let marked: Vec<bool> = (0..n).map(|i| i < genus).collect();
        let symplectic = GradedIdeal::new(n, vec![IdealGenerator { element: class, lift: relator.clone() }], Some(marked.clone()))?;
        let handlebody = GradedIdeal::new(
            n,
            (0..genus).map(|i| IdealGenerator { element: LieElement::generator(i), lift: Word::generator(i) }).collect(),
            Some(marked),
        )?;
        Ok(SurfaceModel {
            genus,
            alphabet: Alphabet::surface(genus),
            relator,
            symplectic,
            handlebody,
            lift_series: Mutex::new(HashMap::new()),
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn symplectic_ideal(&self) -> &GradedIdeal {
        &self.symplectic
    }

    pub fn handlebody_ideal(&self) -> &GradedIdeal {
        &self.handlebody
    }

    /// Normal form modulo the symplectic ideal.
    pub fn reduce(&self, e: &LieElement) -> QuotientClass {
        self.symplectic.reduce(e)
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.support_rank() > self.rank() {
            return Err(Error::UnknownGenerator(format!("x{}", w.support_rank() - 1)));
        }
        Ok(())
    }

    fn lift_power(&self, weight: usize, id: usize, inverse: bool, cap: usize) -> Arc<MagnusSeries<BigInt>> {
        let key = (weight, id, inverse, cap);
        if let Some(s) = self.lift_series.lock().unwrap().get(&key) {
            return s.clone();
        }
        let lift = &self.symplectic.span(weight).vectors[id].lift;
        let w = if inverse { lift.inverse() } else { lift.clone() };
        let s = Arc::new(MagnusSeries::of_word(&w, self.rank(), cap));
        self.lift_series.lock().unwrap().insert(key, s.clone());
        s
    }

    /// The image of `w` in the graded Lie ring of the surface group: the first
    /// weight at which it survives modulo the symplectic ideal, after
    /// correcting lower weights by relator consequences.
    pub fn surface_class(&self, w: &Word, cap: usize) -> Result<Graded<QuotientClass>> {
        self.check_word(w)?;
        let mut s = MagnusSeries::<BigInt>::of_word(w, self.rank(), cap);
        while let Some(k) = s.lowest_degree() {
            let e = s.lie_component(k)?;
            let q = self.symplectic.reduce(&e);
            if !q.torsion.is_empty() {
                return Err(Error::Torsion(q.torsion.iter().map(ToString::to_string).collect()));
            }
            if !q.is_zero() {
                return Ok(Graded::Class { weight: k, class: q });
            }
            let combo = self
                .symplectic
                .express(&e)
                .ok_or_else(|| Error::InternalFault(format!("weight-{k} class reduces to zero but is not in the ideal span")))?;
            for (id, c) in combo {
                let times = c.abs().to_usize().ok_or_else(|| Error::InternalFault("correction exponent overflow".into()))?;
                let factor = self.lift_power(k, id, c.is_positive(), cap);
                for _ in 0..times {
                    s = s.mul(&factor);
                }
            }
            if s.lowest_degree() == Some(k) {
                return Err(Error::InternalFault(format!("correction did not clear weight {k}")));
            }
        }
        Ok(Graded::Trivial { cap })
    }

    /// Class after killing every `aᵢ`: the image in the free group on the `b`'s.
    pub fn handlebody_class(&self, w: &Word, cap: usize) -> Result<Graded<LieElement>> {
        self.check_word(w)?;
        let killed = w.kill(|g| g < self.genus);
        let s = MagnusSeries::<BigInt>::of_word(&killed, self.rank(), cap);
        match s.lowest_degree() {
            Some(k) => Ok(Graded::Class { weight: k, class: s.lie_component(k)? }),
            None => Ok(Graded::Trivial { cap }),
        }
    }

    /// Free class of `w` at weight `k` (zero if `w` lies deeper).
    pub fn free_class(&self, w: &Word, k: usize) -> Result<LieElement> {
        self.check_word(w)?;
        MagnusSeries::<BigInt>::of_word(w, self.rank(), k).lie_component(k)
    }
}
