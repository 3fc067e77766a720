//! Traces of Frobenius as special values of `4G4` and `6G6`.
//!
//! Each check computes both sides independently: the trace side by counting
//! points, the hypergeometric side with [`evaluate_g`](crate::gfunc::evaluate_g).
//! [`pairs`] covers the sum of the traces of a curve and its twin over `F_q`;
//! [`rational`] covers single curves over `Q` reduced mod `p`.

pub mod corollary;
pub mod pairs;
pub mod rational;

pub use corollary::{corollary_values, CorollaryItem};
pub use pairs::{legendre_single_trace, trace_sum_pair, PairCheck};
pub use rational::{rational_curve_trace, RationalCheck};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{FqElem, FqField};
use crate::padic::ExactRational;

/// The trace identities, named by the curve family they describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    /// `a(E_l) + a(E_-l)` for Legendre curves, `4G4` at `l^2`.
    T13,
    /// `y^2 + a1 xy +- a3 y = x^3`, `4G4` at `729 a3^2 / a1^6`.
    T14,
    /// `y^2 = x^3 + f x^2 +- g x`, `4G4` at `16 g^2 / f^4`.
    T15,
    /// `y^2 = x^3 + c x^2 +- d`, `6G6` at `729 d^2 / 16 c^6`.
    T16,
    /// The same pair through `4G4`, `q = 1, 7 mod 12`.
    T17a,
    /// The same pair through `4G4`, `q = 5 mod 12`.
    T17b,
    /// The same pair through `4G4`, `p = 11 mod 12` and `r = 1`.
    T17c,
    /// Legendre curve `E_-l` over `Q`, `l` in `{2, 1/2}`.
    T18,
    /// `y^2 + a xy - (a^3/24) y = x^3` over `Q`.
    T19,
    /// `y^2 = x^3 + a x^2 - (a^2/3) x` over `Q`.
    T110,
    /// `y^2 = x^3 + a x^2 + 2a^3/27` over `Q`.
    T111,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::T13,
        TheoremId::T14,
        TheoremId::T15,
        TheoremId::T16,
        TheoremId::T17a,
        TheoremId::T17b,
        TheoremId::T17c,
        TheoremId::T18,
        TheoremId::T19,
        TheoremId::T110,
        TheoremId::T111,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TheoremId::T13 => "t13",
            TheoremId::T14 => "t14",
            TheoremId::T15 => "t15",
            TheoremId::T16 => "t16",
            TheoremId::T17a => "t17-1",
            TheoremId::T17b => "t17-2",
            TheoremId::T17c => "t17-3",
            TheoremId::T18 => "t18",
            TheoremId::T19 => "t19",
            TheoremId::T110 => "t110",
            TheoremId::T111 => "t111",
        }
    }

    /// Single curves over `Q` rather than pairs over `F_q`.
    pub fn is_rational(self) -> bool {
        matches!(self, TheoremId::T18 | TheoremId::T19 | TheoremId::T110 | TheoremId::T111)
    }

    /// Congruence and size conditions on `q = p^r`.
    pub fn check_field(self, p: u64, r: u32) -> Result<()> {
        let q = p.pow(r);
        let fail = |why: &str| Err(Error::HypothesisViolation(format!("{}: {why} (q = {q})", self.label())));
        match self {
            TheoremId::T13 | TheoremId::T15 => Ok(()),
            TheoremId::T14 | TheoremId::T16 if p <= 3 => fail("requires p > 3"),
            TheoremId::T14 | TheoremId::T16 => Ok(()),
            TheoremId::T17a | TheoremId::T17b | TheoremId::T17c if p <= 3 => fail("requires p > 3"),
            TheoremId::T17a if q % 12 != 1 && q % 12 != 7 => fail("requires q = 1, 7 mod 12"),
            TheoremId::T17b if q % 12 != 5 => fail("requires q = 5 mod 12"),
            TheoremId::T17c if p % 12 != 11 || r != 1 => fail("requires p = 11 mod 12 and r = 1"),
            TheoremId::T17a | TheoremId::T17b | TheoremId::T17c => Ok(()),
            TheoremId::T18 if p < 5 || p % 4 != 3 => fail("requires p >= 5 and p = 3 mod 4"),
            TheoremId::T19 if p == 17 => fail("excludes p = 17"),
            TheoremId::T19 | TheoremId::T110 if p % 12 != 5 && p % 12 != 11 => {
                fail("requires p = 5, 11 mod 12")
            }
            TheoremId::T111 if p % 12 != 7 && p % 12 != 11 => fail("requires p = 7, 11 mod 12"),
            TheoremId::T18 | TheoremId::T19 | TheoremId::T110 | TheoremId::T111 => Ok(()),
        }
    }

    /// The `4G4` part applicable to the `c, d` pair over `F_{p^r}`, if any.
    pub fn cd_part(p: u64, r: u32) -> Option<TheoremId> {
        [TheoremId::T17a, TheoremId::T17b, TheoremId::T17c]
            .into_iter()
            .find(|t| t.check_field(p, r).is_ok())
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown theorem {s:?}")))
    }
}

/// `p`-adic valuation of a rational; `None` stands for `ord_p(0) = infinity`.
pub fn ordp(x: &ExactRational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let val = |n: &BigInt| {
        let mut n = n.abs();
        let mut k = 0i64;
        while !n.is_zero() && n.is_multiple_of(&p) {
            n /= &p;
            k += 1;
        }
        k
    };
    Some(val(x.numer()) - val(x.denom()))
}

/// A rational together with its image in `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalModP {
    pub value: ExactRational,
    pub reduced: FqElem,
}

impl RationalModP {
    pub fn new(value: ExactRational, field: &FqField) -> Result<Self> {
        if value.denom_divisible_by(field.p()) {
            return Err(Error::DenominatorDivisibleByP(value.to_string()));
        }
        let reduced = field
            .from_rational(&value)
            .expect("denominator is a unit mod p");
        Ok(RationalModP { value, reduced })
    }
}

/// `a_{p^r}` from `a_p` by `a_{p^k} = a_p a_{p^{k-1}} - p 1_E(p) a_{p^{k-2}}`
/// with `a_1 = 1`.
pub fn frobenius_power_series(ap: i64, p: u64, good: bool, r: u32) -> i128 {
    let p = if good { p as i128 } else { 0 };
    let (mut prev, mut cur) = (1i128, ap as i128);
    for _ in 1..r {
        (prev, cur) = (cur, ap as i128 * cur - p * prev);
    }
    if r == 0 {
        1
    } else {
        cur
    }
}

/// `alpha^r + beta^r` for the Frobenius roots of a curve with `F_p` trace
/// `ap`: the trace over `F_{p^r}`.
pub fn frobenius_power_sum(ap: i64, p: u64, r: u32) -> i128 {
    let p = p as i128;
    let (mut prev, mut cur) = (2i128, ap as i128);
    for _ in 1..r {
        (prev, cur) = (cur, ap as i128 * cur - p * prev);
    }
    if r == 0 {
        2
    } else {
        cur
    }
}

fn small(v: i128) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::InvalidParameters(format!("{v} overflows a 64-bit integer")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{build_field, trace_of_frobenius, CurveSpec};

    #[test]
    fn valuations() {
        assert_eq!(ordp(&ExactRational::zero(), 7), None);
        assert_eq!(ordp(&ExactRational::new(1, 2), 2), Some(-1));
        assert_eq!(ordp(&ExactRational::from_integer(50), 5), Some(2));
        assert_eq!(ordp(&ExactRational::new(-27, 8), 3), Some(3));
        assert_eq!(ordp(&ExactRational::new(3, 5), 7), Some(0));
    }

    #[test]
    fn recurrence_values() {
        assert_eq!(frobenius_power_series(0, 7, true, 2), -7);
        for r in 1..8 {
            let expect = if r % 2 == 1 { 0 } else { (-5i128).pow(r / 2) };
            assert_eq!(frobenius_power_series(0, 5, true, r), expect);
        }
        assert_eq!(frobenius_power_series(4, 11, true, 3), -24);
        assert_eq!(frobenius_power_series(3, 11, false, 3), 27);
        assert_eq!(frobenius_power_series(5, 13, true, 1), 5);
    }

    #[test]
    fn power_sums_match_counts() {
        let base = build_field(7, 1).unwrap();
        for r in 1..=3 {
            let f = build_field(7, r).unwrap();
            for lam in 2..6 {
                let ap = trace_of_frobenius(&CurveSpec::Legendre { lambda: base.from_int(lam) }, &base).unwrap();
                let aq = trace_of_frobenius(&CurveSpec::Legendre { lambda: f.from_int(lam) }, &f).unwrap();
                assert_eq!(frobenius_power_sum(ap, 7, r), aq as i128);
            }
        }
    }

    #[test]
    fn hypotheses() {
        assert!(TheoremId::T14.check_field(3, 2).is_err());
        assert!(TheoremId::T17a.check_field(13, 1).is_ok());
        assert!(TheoremId::T17a.check_field(7, 1).is_ok());
        assert!(TheoremId::T17b.check_field(5, 1).is_ok());
        assert!(TheoremId::T17b.check_field(5, 2).is_err());
        assert!(TheoremId::T17c.check_field(11, 1).is_ok());
        assert!(TheoremId::T17c.check_field(11, 2).is_err());
        assert!(TheoremId::T18.check_field(7, 3).is_ok());
        assert!(TheoremId::T18.check_field(13, 1).is_err());
        assert!(TheoremId::T19.check_field(17, 1).is_err());
        assert!(TheoremId::T19.check_field(29, 1).is_ok());
        assert!(TheoremId::T111.check_field(5, 1).is_err());
        assert_eq!(TheoremId::cd_part(5, 2), Some(TheoremId::T17a));
        assert_eq!(TheoremId::cd_part(11, 2), Some(TheoremId::T17a));
        assert_eq!(TheoremId::cd_part(11, 3), None);
        for t in TheoremId::ALL {
            assert_eq!(t.label().parse::<TheoremId>().unwrap(), t);
        }
    }

    #[test]
    fn rational_reduction() {
        let f = build_field(7, 1).unwrap();
        let x = RationalModP::new(ExactRational::new(-8, 24), &f).unwrap();
        assert_eq!(f.mul(x.reduced, f.from_int(3)), f.from_int(-1));
        assert!(matches!(
            RationalModP::new(ExactRational::new(1, 14), &f),
            Err(Error::DenominatorDivisibleByP(_))
        ));
    }
}
