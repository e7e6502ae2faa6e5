//! Exact rational numbers.
//!
//! A thin newtype over [`num_rational::BigRational`]. Every ratio, threshold
//! and objective value in the crate goes through this type so that optimality
//! decisions never depend on floating point.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact fraction kept in canonical form (positive denominator, reduced).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num / den`. Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(num.into(), den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always strictly positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> BigInt {
        ceil_div(self.numer(), self.denom())
    }

    /// Largest integer not above `self`.
    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    /// Numerator and denominator as `i128`, if both fit.
    pub fn to_i128_parts(&self) -> Option<(i128, i128)> {
        Some((self.numer().to_i128()?, self.denom().to_i128()?))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }
}

/// `ceil(n / d)` for `d > 0`, computed as `floor((n + d - 1) / d)`.
pub fn ceil_div(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    (n + d - BigInt::one()).div_floor(d)
}

/// Smallest integer greater than or equal to `q`.
pub fn ceil_rational(q: &Rational) -> BigInt {
    q.ceil()
}

/// `ceil(n / d)` for `i128` with `d > 0`.
pub(crate) fn ceil_div_i128(n: i128, d: i128) -> i128 {
    debug_assert!(d > 0);
    n.div_euclid(d) + i128::from(n.rem_euclid(d) != 0)
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i128> for Rational {
    fn from(n: i128) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }

        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }

        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        Rational(iter.map(|r| r.0).sum())
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, r| acc + r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `"n"` or `"n/d"` with `d != 0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(Rational::new(n, d))
            }
            None => Ok(Rational::from_integer(
                s.parse::<BigInt>().map_err(|_| err())?,
            )),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl Visitor<'_> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a \"num/den\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational::from_integer(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational::from_integer(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(RationalVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn canonical_form() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(q(7, 7), Rational::one());
    }

    #[test]
    fn ceiling_examples() {
        assert_eq!(ceil_rational(&q(7, 2)), BigInt::from(4));
        assert_eq!(ceil_rational(&q(-3, 2)), BigInt::from(-1));
        assert_eq!(ceil_rational(&q(3, 1)), BigInt::from(3));
        assert_eq!(q(-3, 2).floor(), BigInt::from(-2));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("1/2".parse::<Rational>().unwrap(), q(1, 2));
        assert_eq!(" 4 ".parse::<Rational>().unwrap(), q(4, 1));
        assert_eq!("-6/4".parse::<Rational>().unwrap(), q(-3, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!(q(5, 2).to_string(), "5/2");
        assert_eq!(q(6, 2).to_string(), "3");
    }

    #[test]
    fn serde_accepts_strings_and_integers() {
        let a: Rational = serde_json::from_str("\"3/6\"").unwrap();
        let b: Rational = serde_json::from_str("7").unwrap();
        assert_eq!(a, q(1, 2));
        assert_eq!(b, q(7, 1));
        assert_eq!(serde_json::to_string(&a).unwrap(), "\"1/2\"");
        assert!(serde_json::from_str::<Rational>("0.5").is_err());
    }

    proptest! {
        #[test]
        fn ceil_brackets_the_quotient(a in -1_000_000i64..1_000_000, b in 1i64..10_000) {
            let c = ceil_rational(&q(a, b));
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            prop_assert!(&c * &b >= a);
            prop_assert!((&c - 1) * &b < a);
        }

        #[test]
        fn i128_ceiling_agrees(a in any::<i64>(), b in 1i64..i64::MAX) {
            let big = ceil_div(&BigInt::from(a), &BigInt::from(b));
            prop_assert_eq!(big, BigInt::from(ceil_div_i128(a as i128, b as i128)));
        }

        #[test]
        fn ordering_matches_cross_multiplication(
            a in any::<i64>(), b in 1i64..i64::MAX,
            c in any::<i64>(), d in 1i64..i64::MAX,
        ) {
            let lhs = BigInt::from(a) * BigInt::from(d);
            let rhs = BigInt::from(c) * BigInt::from(b);
            prop_assert_eq!(q(a, b).cmp(&q(c, d)), lhs.cmp(&rhs));
        }
    }
}
