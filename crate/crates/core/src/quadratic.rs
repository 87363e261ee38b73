//! The real quadratic fields `ℚ(√d)`, used for exact eigenplane computations.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{FieldScalar, Scalar};

/// `a + b√d` with rational `a`, `b` and squarefree `d > 1`. Rational values
/// carry `d = 0`; mixing two different radicands panics.
#[derive(Clone, Debug)]
pub struct Surd {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

impl Surd {
    pub fn rational(a: BigRational) -> Self {
        Surd { a, b: BigRational::zero(), d: BigInt::zero() }
    }

    /// `a + b√d`; `d` must be squarefree and greater than one.
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Self {
        if b.is_zero() {
            return Surd::rational(a);
        }
        Surd { a, b, d }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn radicand(&self, other: &Surd) -> BigInt {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, other.d, "mixing different quadratic fields");
                self.d.clone()
            }
        }
    }

    /// `a − b√d`
    pub fn conjugate(&self) -> Surd {
        Surd::new(self.a.clone(), -self.b.clone(), self.d.clone())
    }

    /// `a² − d b²`
    pub fn norm(&self) -> BigRational {
        self.a.clone() * self.a.clone() - BigRational::from_integer(self.d.clone()) * self.b.clone() * self.b.clone()
    }

    /// Writes `√n` (`n ≥ 0`) as `c√d` with squarefree `d`.
    pub fn sqrt_of(n: &BigInt) -> Surd {
        assert!(!n.is_negative(), "square root of a negative number");
        let mut square = BigInt::one();
        let mut rest = n.clone();
        let mut p = BigInt::from(2);
        while &p * &p <= rest {
            while (&rest % (&p * &p)).is_zero() {
                rest /= &p * &p;
                square *= &p;
            }
            p += 1;
        }
        if rest.is_one() || rest.is_zero() {
            let v = if rest.is_zero() { BigInt::zero() } else { square };
            Surd::rational(BigRational::from_integer(v))
        } else {
            Surd::new(BigRational::zero(), BigRational::from_integer(square), rest)
        }
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let root = format!("sqrt({})", self.d);
        let one = BigRational::one();
        let irrational = |b: &BigRational| {
            if *b == one {
                root.clone()
            } else if *b == -one.clone() {
                format!("-{root}")
            } else {
                format!("{b}*{root}")
            }
        };
        if self.a.is_zero() {
            write!(f, "{}", irrational(&self.b))
        } else if self.b.is_negative() {
            write!(f, "{} - {}", self.a, irrational(&-self.b.clone()))
        } else {
            write!(f, "{} + {}", self.a, irrational(&self.b))
        }
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Surd::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Surd {
    fn one() -> Self {
        Surd::rational(BigRational::one())
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        let d = self.radicand(&o);
        Surd::new(self.a + o.a, self.b + o.b, d)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        let d = self.radicand(&o);
        Surd::new(self.a - o.a, self.b - o.b, d)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::new(-self.a, -self.b, self.d)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        let d = self.radicand(&o);
        let dq = BigRational::from_integer(d.clone());
        let a = self.a.clone() * o.a.clone() + dq * self.b.clone() * o.b.clone();
        let b = self.a * o.b + self.b * o.a;
        Surd::new(a, b, d)
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, o: Surd) -> Surd {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in a quadratic field");
        let num = self * o.conjugate();
        Surd::new(num.a / n.clone(), num.b / n, num.d)
    }
}

impl Scalar for Surd {
    fn from_bigint(v: &BigInt) -> Self {
        Surd::rational(BigRational::from_integer(v.clone()))
    }
}

impl FieldScalar for Surd {}
