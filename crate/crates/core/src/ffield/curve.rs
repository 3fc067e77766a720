//! Elliptic curve families over `F_q` and point counting.

use super::{FqElem, FqField};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The curve families handled by the trace layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveSpec {
    /// `y^2 = x(x - 1)(x - lambda)`
    Legendre { lambda: FqElem },
    /// `y^2 + a1 xy + a3 y = x^3`
    A1A3 { a1: FqElem, a3: FqElem },
    /// `y^2 = x^3 + f x^2 + g x`
    FG { f: FqElem, g: FqElem },
    /// `y^2 = x^3 + c x^2 + d`
    CD { c: FqElem, d: FqElem },
    Weierstrass(Weierstrass),
}

/// Long Weierstrass coefficients `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weierstrass {
    pub a1: FqElem,
    pub a2: FqElem,
    pub a3: FqElem,
    pub a4: FqElem,
    pub a6: FqElem,
}

impl CurveSpec {
    pub fn weierstrass(&self, field: &FqField) -> Weierstrass {
        let z = field.zero();
        match *self {
            CurveSpec::Legendre { lambda } => Weierstrass {
                a1: z,
                a2: field.neg(field.add(field.one(), lambda)),
                a3: z,
                a4: lambda,
                a6: z,
            },
            CurveSpec::A1A3 { a1, a3 } => Weierstrass {
                a1,
                a2: z,
                a3,
                a4: z,
                a6: z,
            },
            CurveSpec::FG { f, g } => Weierstrass {
                a1: z,
                a2: f,
                a3: z,
                a4: g,
                a6: z,
            },
            CurveSpec::CD { c, d } => Weierstrass {
                a1: z,
                a2: c,
                a3: z,
                a4: z,
                a6: d,
            },
            CurveSpec::Weierstrass(w) => w,
        }
    }

    /// Check nonsingularity, then the family's parameter restrictions.
    pub fn validate(&self, field: &FqField) -> Result<Weierstrass> {
        let w = self.weierstrass(field);
        if discriminant(&w, field).is_zero() {
            return Err(Error::SingularCurve);
        }
        let bad = |msg: &str| Err(Error::InvalidCurveParameter(msg.to_string()));
        match *self {
            CurveSpec::Legendre { lambda } => {
                if lambda == field.from_int(-1) {
                    return bad("Legendre family excludes lambda = -1");
                }
            }
            CurveSpec::A1A3 { a1, a3 } => {
                if a1.is_zero() || a3.is_zero() {
                    return bad("a1 and a3 must be nonzero");
                }
                if field.p() <= 3 {
                    return bad("a1/a3 family requires p > 3");
                }
            }
            CurveSpec::FG { f, g } => {
                if f.is_zero() || g.is_zero() {
                    return bad("f and g must be nonzero");
                }
            }
            CurveSpec::CD { c, d } => {
                if c.is_zero() || d.is_zero() {
                    return bad("c and d must be nonzero");
                }
                if field.p() <= 3 {
                    return bad("c/d family requires p > 3");
                }
            }
            CurveSpec::Weierstrass(_) => {}
        }
        Ok(w)
    }
}

/// Discriminant from the `b2, b4, b6, b8` covariants.
pub fn discriminant(w: &Weierstrass, field: &FqField) -> FqElem {
    let f = field;
    let c = |n: i64| f.from_int(n);
    let b2 = f.add(f.square(w.a1), f.mul(c(4), w.a2));
    let b4 = f.add(f.mul(c(2), w.a4), f.mul(w.a1, w.a3));
    let b6 = f.add(f.square(w.a3), f.mul(c(4), w.a6));
    let b8 = {
        let t1 = f.mul(f.square(w.a1), w.a6);
        let t2 = f.mul(c(4), f.mul(w.a2, w.a6));
        let t3 = f.mul(w.a1, f.mul(w.a3, w.a4));
        let t4 = f.mul(w.a2, f.square(w.a3));
        let t5 = f.square(w.a4);
        f.sub(f.add(f.sub(f.add(t1, t2), t3), t4), t5)
    };
    let d1 = f.mul(f.square(b2), b8);
    let d2 = f.mul(c(8), f.mul(b4, f.square(b4)));
    let d3 = f.mul(c(27), f.square(b6));
    let d4 = f.mul(c(9), f.mul(b2, f.mul(b4, b6)));
    f.add(f.neg(f.add(f.add(d1, d2), d3)), d4)
}

/// Number of `F_q`-points including the point at infinity.
///
/// Completes the square (`p` is odd) to reach `y^2 = x^3 + A x^2 + B x + C`
/// and sums the quadratic character over `x`.
pub fn count_points(curve: &CurveSpec, field: &FqField) -> Result<u64> {
    let w = curve.validate(field)?;
    let f = field;
    let inv2 = f.inv(f.from_int(2)).expect("p odd");
    let inv4 = f.square(inv2);
    let a = f.add(w.a2, f.mul(f.square(w.a1), inv4));
    let b = f.add(w.a4, f.mul(f.mul(w.a1, w.a3), inv2));
    let c = f.add(w.a6, f.mul(f.square(w.a3), inv4));
    let mut chi_sum = 0i64;
    for x in f.elements() {
        let x2 = f.square(x);
        let rhs = f.add(f.add(f.mul(x2, f.add(x, a)), f.mul(b, x)), c);
        chi_sum += f.quad_char(rhs);
    }
    Ok((f.q() as i64 + 1 + chi_sum) as u64)
}

/// Point count by enumerating every affine `(x, y)`; `O(q^2)`.
pub fn count_points_exhaustive(curve: &CurveSpec, field: &FqField) -> Result<u64> {
    let w = curve.validate(field)?;
    let f = field;
    let mut count = 1u64;
    for x in f.elements() {
        let x2 = f.square(x);
        let rhs = f.add(
            f.add(f.mul(x2, f.add(x, w.a2)), f.mul(w.a4, x)),
            w.a6,
        );
        let lin = f.add(f.mul(w.a1, x), w.a3);
        for y in f.elements() {
            let lhs = f.mul(y, f.add(y, lin));
            if lhs == rhs {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `a_q = q + 1 - #E(F_q)`.
pub fn trace_of_frobenius(curve: &CurveSpec, field: &FqField) -> Result<i64> {
    let n = count_points(curve, field)?;
    let a = field.q() as i64 + 1 - n as i64;
    debug_assert!((a as i128) * (a as i128) <= 4 * field.q() as i128, "Hasse bound");
    Ok(a)
}
