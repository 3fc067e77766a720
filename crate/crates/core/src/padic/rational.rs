use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;

/// A reduced rational number with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// `num / den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExactRational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: i64) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        ExactRational(BigRational::new(num, den))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Greatest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    /// `floor` as a machine integer; panics if it does not fit.
    pub fn floor_i64(&self) -> i64 {
        self.floor().to_i64().expect("floor fits in i64")
    }

    /// Fractional part, in `[0, 1)`.
    pub fn frac(&self) -> Self {
        ExactRational(BigRational::new(
            self.numer().mod_floor(self.denom()),
            self.denom().clone(),
        ))
    }

    /// Numerator and denominator as `i128`, if both fit.
    pub fn to_i128_parts(&self) -> Option<(i128, i128)> {
        Some((self.numer().to_i128()?, self.denom().to_i128()?))
    }

    /// Whether `p` divides the denominator.
    pub fn denom_divisible_by(&self, p: u64) -> bool {
        (self.denom() % p).is_zero()
    }

    /// The residue `m` in `[0, modulus)` with `m = self` modulo `modulus`, if the
    /// denominator is invertible.
    pub fn residue(&self, modulus: u64) -> Option<u64> {
        let big_m = BigInt::from(modulus);
        let n = self.numer().mod_floor(&big_m).to_u64()?;
        let d = self.denom().mod_floor(&big_m).to_u64()?;
        let inv = arith::inv_mod(d, modulus)?;
        Some(arith::mul_mod(n, inv, modulus))
    }

    pub fn mul_int(&self, k: i64) -> Self {
        ExactRational(&self.0 * BigInt::from(k))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational(&self.0 $op &rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational {0:?}")]
pub struct ParseRationalError(pub String);

impl FromStr for ExactRational {
    type Err = ParseRationalError;

    /// Accepts `n` or `n/d` with optional sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(ExactRational::from_big(n, d))
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
