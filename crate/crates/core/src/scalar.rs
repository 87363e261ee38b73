//! Exact scalar types. Floats are deliberately excluded.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative ring with exact arithmetic.
pub trait Scalar:
    Clone
    + Debug
    + std::fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_bigint(v: &BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }
}

/// Euclidean ring of integers; needed by Hermite and Smith forms.
pub trait IntegerScalar: Scalar + Integer + Signed + Ord + std::hash::Hash {
    fn to_bigint(&self) -> BigInt;
}

/// A field; needed by rational elimination.
pub trait FieldScalar: Scalar + Div<Output = Self> {}

impl Scalar for i64 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_i64().expect("value does not fit in i64")
    }
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Scalar for i128 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_i128().expect("value does not fit in i128")
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

impl Scalar for BigInt {
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
}

impl Scalar for BigRational {
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
}

impl IntegerScalar for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl IntegerScalar for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl IntegerScalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

impl FieldScalar for BigRational {}
