//! Sums of Frobenius traces of a curve and its twin over `F_q`.

use serde::{Deserialize, Serialize};

use super::TheoremId;
use crate::arith;
use crate::error::{Error, Result};
use crate::ffield::{trace_of_frobenius, CurveSpec, FqElem, FqField};
use crate::gfunc::{evaluate_g_integer, trace_sum_bound, GParams};
use crate::padic::{ExactRational, PadicCtx};

fn row(v: &[(i64, i64)]) -> Vec<ExactRational> {
    v.iter().map(|&(n, d)| ExactRational::new(n, d)).collect()
}

/// Hypergeometric parameter rows used by a theorem.
pub fn family_rows(theorem: TheoremId) -> (Vec<ExactRational>, Vec<ExactRational>) {
    let half = [(0, 1), (1, 2), (0, 1), (1, 2)];
    match theorem {
        TheoremId::T13 | TheoremId::T18 => (row(&half), row(&[(1, 4), (3, 4), (1, 4), (3, 4)])),
        TheoremId::T14 | TheoremId::T19 => (row(&half), row(&[(1, 6), (1, 3), (2, 3), (5, 6)])),
        TheoremId::T15 | TheoremId::T110 => (row(&half), row(&[(1, 8), (3, 8), (5, 8), (7, 8)])),
        TheoremId::T16 | TheoremId::T111 => (
            row(&[(0, 1), (1, 2), (0, 1), (1, 2), (1, 4), (3, 4)]),
            row(&[(1, 12), (1, 4), (5, 12), (7, 12), (3, 4), (11, 12)]),
        ),
        TheoremId::T17a | TheoremId::T17b | TheoremId::T17c => {
            (row(&half), row(&[(1, 12), (5, 12), (7, 12), (11, 12)]))
        }
    }
}

/// One instance of a pair identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub theorem: TheoremId,
    pub p: u64,
    pub r: u32,
    /// Curve parameters as field-element encodings.
    pub params: Vec<u64>,
    /// Sum of the two point-count traces.
    pub lhs: i64,
    /// The hypergeometric value.
    pub g: i64,
    pub prefactor: i64,
    pub correction: i64,
    /// `prefactor * g + correction`.
    pub rhs: i64,
}

impl PairCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

struct Setup {
    curves: [CurveSpec; 2],
    t: FqElem,
    prefactor: i64,
    correction: i64,
}

fn setup(theorem: TheoremId, params: &[FqElem], field: &FqField) -> Result<Setup> {
    let need = if theorem == TheoremId::T13 { 1 } else { 2 };
    if params.len() != need || theorem.is_rational() {
        return Err(Error::InvalidParameters(format!(
            "{theorem} takes {need} field parameters over F_q"
        )));
    }
    let f = field;
    let phi = |x: FqElem| f.quad_char(x);
    let c729 = f.from_int(729);
    let s = match theorem {
        TheoremId::T13 => {
            let lambda = params[0];
            Setup {
                curves: [CurveSpec::Legendre { lambda }, CurveSpec::Legendre { lambda: f.neg(lambda) }],
                t: f.square(lambda),
                prefactor: phi(f.from_int(-1)),
                correction: 0,
            }
        }
        TheoremId::T14 => {
            let (a1, a3) = (params[0], params[1]);
            let t = f.div(f.mul(c729, f.square(a3)), f.pow(a1, 6).expect("positive power"));
            Setup {
                curves: [CurveSpec::A1A3 { a1, a3 }, CurveSpec::A1A3 { a1, a3: f.neg(a3) }],
                t: t.ok_or_else(|| Error::InvalidCurveParameter("a1 must be nonzero".into()))?,
                prefactor: 1,
                correction: 0,
            }
        }
        TheoremId::T15 => {
            let (ff, g) = (params[0], params[1]);
            let t = f.div(f.mul(f.from_int(16), f.square(g)), f.pow(ff, 4).expect("positive power"));
            Setup {
                curves: [CurveSpec::FG { f: ff, g }, CurveSpec::FG { f: ff, g: f.neg(g) }],
                t: t.ok_or_else(|| Error::InvalidCurveParameter("f must be nonzero".into()))?,
                prefactor: phi(ff),
                correction: 0,
            }
        }
        TheoremId::T16 | TheoremId::T17a | TheoremId::T17b | TheoremId::T17c => {
            let (c, d) = (params[0], params[1]);
            let den = f.mul(f.from_int(16), f.pow(c, 6).expect("positive power"));
            let t = f.div(f.mul(c729, f.square(d)), den);
            let (prefactor, correction) = match theorem {
                TheoremId::T16 => (phi(c), -phi(d) - phi(f.neg(d))),
                TheoremId::T17a => (phi(f.mul(f.from_int(-3), c)), 0),
                _ => (phi(c), 0),
            };
            Setup {
                curves: [CurveSpec::CD { c, d }, CurveSpec::CD { c, d: f.neg(d) }],
                t: t.ok_or_else(|| Error::InvalidCurveParameter("c must be nonzero".into()))?,
                prefactor,
                correction,
            }
        }
        _ => unreachable!("rational theorems rejected above"),
    };
    Ok(s)
}

/// Both sides of a pair identity at one parameter choice.
pub fn trace_sum_pair(
    theorem: TheoremId,
    params: &[FqElem],
    field: &FqField,
    ctx: &PadicCtx,
) -> Result<PairCheck> {
    theorem.check_field(field.p(), field.r())?;
    let s = setup(theorem, params, field)?;
    let mut lhs = 0;
    for curve in &s.curves {
        lhs += trace_of_frobenius(curve, field)?;
    }
    let (top, bottom) = family_rows(theorem);
    let g = evaluate_g_integer(&GParams::new(top, bottom, s.t)?, field, ctx, trace_sum_bound(field.q()))?
        .integer
        .expect("integer attached");
    Ok(PairCheck {
        theorem,
        p: field.p(),
        r: field.r(),
        params: params.iter().map(|x| x.encoding()).collect(),
        lhs,
        g,
        prefactor: s.prefactor,
        correction: s.correction,
        rhs: s.prefactor * g + s.correction,
    })
}

/// `(a_q(E_l), phi(-1) 2G2[1/2, 1/2; 0, 0 | 1/l])` for one Legendre curve.
pub fn legendre_single_trace(lambda: FqElem, field: &FqField, ctx: &PadicCtx) -> Result<(i64, i64)> {
    let counted = trace_of_frobenius(&CurveSpec::Legendre { lambda }, field)?;
    let t = field.inv(lambda).expect("lambda validated nonzero");
    let params = GParams::from_fracs(&[(1, 2), (1, 2)], &[(0, 1), (0, 1)], t)?;
    let bound = arith::ceil_sqrt(4 * field.q()) + 2;
    let g = evaluate_g_integer(&params, field, ctx, bound)?.integer.expect("integer attached");
    Ok((counted, field.quad_char(field.from_int(-1)) * g))
}
