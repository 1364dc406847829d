//! Coefficient rings.
//!
//! Polynomial, Laurent and interpolation code is written once over these
//! traits. The library itself instantiates them with [`BigInt`] (and
//! [`BigRational`] for interpolation); machine integers work too and are
//! handy in tests.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative ring with identity.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = T> {}

/// Ordered rings: lets tables assert non-negativity of their coefficients.
pub trait OrderedRing: Ring + Signed + PartialOrd {}

impl<T> OrderedRing for T where T: Ring + Signed + PartialOrd {}

/// Coefficients that can be written to and read back from decimal strings.
pub trait DecimalCoeff: Ring + Display + FromStr {}

impl<T> DecimalCoeff for T where T: Ring + Display + FromStr {}

/// Lifts a machine integer into any ring by repeated doubling.
pub fn from_i64<R: Ring>(value: i64) -> R {
    let mut acc = R::zero();
    let mut base = R::one();
    let mut k = value.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        k >>= 1;
    }
    if value < 0 {
        -acc
    } else {
        acc
    }
}

pub type Integer = BigInt;
pub type Rational = BigRational;
