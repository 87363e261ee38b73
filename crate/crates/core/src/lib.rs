//! Exact computations in free Lie rings, surface Lie rings and Johnson
//! homomorphisms of surface mapping classes.
//!
//! The algebra is generic over an exact scalar type (see [`scalar`]); the
//! aliases below fix the integer and rational instances used by the public
//! surface and Johnson APIs.

use std::fmt;

use serde::Serialize;

pub mod echelon;
pub mod error;
pub mod hall;
pub mod ideal;
pub mod io;
pub mod johnson;
pub mod lie;
pub mod magnus;
pub mod matrix;
pub mod obstruction;
pub mod quadratic;
pub mod region;
pub mod scalar;
pub mod surface;
pub mod symplectic;
pub mod word;

pub use error::{Error, Result};
pub use hall::{binomial, hall_basis, hall_basis_of_rank, mobius, witt, HallBasis, HallTree};
pub use lie::{bracket, normalize_tree, substitute};
pub use magnus::{induced_lie_map, lie_class_at, magnus, weight_of};
pub use scalar::{FieldScalar, IntegerScalar, Scalar};
pub use word::{commutator, Alphabet, GroupEndomorphism, Letter, Word};

/// Arbitrary-precision integers.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// Integer Lie elements.
pub type LieElement = lie::LieElement<Int>;
/// Rational Lie elements.
pub type RationalLieElement = lie::LieElement<Rational>;
/// Integer Magnus series.
pub type MagnusSeries = magnus::MagnusSeries<Int>;

/// A filtration degree: known exactly, or only bounded below (the
/// computation stopped at a cap).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Depth {
    Exact(usize),
    AtLeast(usize),
}

impl Depth {
    /// Whether the degree is known to be at least `k`.
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Depth::Exact(d) | Depth::AtLeast(d) => d >= k,
        }
    }

    pub fn lower_bound(self) -> usize {
        match self {
            Depth::Exact(d) | Depth::AtLeast(d) => d,
        }
    }

    pub fn min(self, other: Depth) -> Depth {
        if self.lower_bound() <= other.lower_bound() {
            match (self, other) {
                (Depth::AtLeast(a), Depth::Exact(b)) if a == b => other,
                _ => self,
            }
        } else {
            other
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Exact(d) => write!(f, "{d}"),
            Depth::AtLeast(d) => write!(f, "≥ {d}"),
        }
    }
}
