#![allow(dead_code)]

use johnson_core::johnson::{braid_automorphism, MappingClassData};
use johnson_core::Word;

/// A mapping class with its inverse.
#[derive(Clone, Debug)]
pub struct Invertible {
    pub f: MappingClassData,
    pub inv: MappingClassData,
}

impl Invertible {
    pub fn compose(&self, other: &Invertible) -> Invertible {
        Invertible { f: self.f.compose(&other.f).unwrap(), inv: other.inv.compose(&self.inv).unwrap() }
    }

    pub fn inverse(&self) -> Invertible {
        Invertible { f: self.inv.clone(), inv: self.f.clone() }
    }

    pub fn commutator(&self, other: &Invertible) -> Invertible {
        self.compose(other).compose(&self.inverse().compose(&other.inverse()))
    }
}

fn b(g: usize, i: usize) -> Word {
    Word::generator(g + i)
}

/// The point-push along `b_i b_j` for adjacent `j = i + 1`, and its inverse.
pub fn adjacent_push(g: usize, i: usize) -> Invertible {
    let p = b(g, i).mul(&b(g, i + 1));
    let lam = |w: &Word| -> Vec<Word> {
        (0..g).map(|m| if m == i || m == i + 1 { w.clone() } else { Word::empty() }).collect()
    };
    Invertible { f: braid_automorphism(&lam(&p)).unwrap(), inv: braid_automorphism(&lam(&p.inverse())).unwrap() }
}

/// Genus-3 braid maps in the second and third Johnson subgroups, built as
/// commutators of the two adjacent pushes.
pub fn genus_three_commutators() -> (Vec<Invertible>, Vec<Invertible>) {
    let x = adjacent_push(3, 0);
    let y = adjacent_push(3, 1);
    let c = x.commutator(&y);
    let d = y.commutator(&x.inverse());
    let depth2 = vec![c.clone(), d.clone(), c.compose(&d)];
    let depth3 = vec![c.commutator(&x), c.commutator(&y), d.commutator(&y)];
    (depth2, depth3)
}

/// The point-push words `λᵢ = φ(aᵢ)aᵢ⁻¹` of a braid map.
pub fn lambdas(f: &MappingClassData) -> Vec<Word> {
    (0..f.genus()).map(|i| f.defect(i)).collect()
}
