//! Executable checks of the splitting identity (a `2G2` pair at `x` and `-x`
//! collapsing to one `4G4` at `x^2`) and the reduction identity (dropping
//! the pair `1/d, (d-1)/d` from both rows when `p = -1 mod d`).

use num_traits::ToPrimitive;

use super::{evaluate_g, GParams};
use crate::arith;
use crate::error::{Error, Result};
use crate::ffield::{FqElem, FqField};
use crate::padic::{ExactRational, PadicCtx};

/// `2G2[a1, a2; a3, a4 | x] + 2G2[a1, a2; a3, a4 | -x]
///  = 4G4[a1/2, (1+a1)/2, a2/2, (1+a2)/2; a3/2, (1+a3)/2, a4/2, (1+a4)/2 | x^2]`.
pub fn check_splitting_identity(
    a: &[ExactRational; 4],
    x: FqElem,
    field: &FqField,
    ctx: &PadicCtx,
) -> Result<bool> {
    let p = ctx.p();
    let mut d = 1u64;
    for ak in a {
        if ak.denom_divisible_by(p) {
            return Err(Error::HypothesisViolation(format!("p divides the denominator of {ak}")));
        }
        let dk = ak
            .denom()
            .to_u64()
            .ok_or_else(|| Error::InvalidParameters(format!("denominator of {ak} too large")))?;
        d = arith::lcm(d, dk);
    }
    if !(ctx.q() - 1).is_multiple_of(d) {
        return Err(Error::HypothesisViolation(format!(
            "q = {} is not 1 mod {d}",
            ctx.q()
        )));
    }
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let two = ExactRational::from_integer(2);
    let one = ExactRational::one();
    let halves = |v: &ExactRational| [v / &two, &(&one + v) / &two];

    let g2 = |t| {
        let params = GParams::new(vec![a[0].clone(), a[1].clone()], vec![a[2].clone(), a[3].clone()], t)?;
        evaluate_g(&params, field, ctx)
    };
    let lhs = g2(x)?.add(&g2(field.neg(x))?);
    let top: Vec<ExactRational> = halves(&a[0]).into_iter().chain(halves(&a[1])).collect();
    let bottom: Vec<ExactRational> = halves(&a[2]).into_iter().chain(halves(&a[3])).collect();
    let rhs = evaluate_g(&GParams::new(top, bottom, field.square(x))?, field, ctx)?;
    Ok(lhs.value_eq(&rhs))
}

/// `(n+2)G(n+2)[a, 1/d, (d-1)/d; b, 1/d, (d-1)/d | t]_p = nGn[a; b | t]_p`
/// for `p = -1 mod d` over a prime field.
pub fn check_reduction_identity(
    top: &[ExactRational],
    bottom: &[ExactRational],
    d: u64,
    t: FqElem,
    field: &FqField,
    ctx: &PadicCtx,
) -> Result<bool> {
    let p = ctx.p();
    if field.r() != 1 {
        return Err(Error::HypothesisViolation("requires a prime field (r = 1)".into()));
    }
    if d == 0 || !(p + 1).is_multiple_of(d) {
        return Err(Error::HypothesisViolation(format!("p = {p} is not -1 mod {d}")));
    }
    let small = GParams::new(top.to_vec(), bottom.to_vec(), t)?;
    let pair = [
        ExactRational::new(1, d as i64),
        ExactRational::new(d as i64 - 1, d as i64),
    ];
    let mut big = small.clone();
    big.top.extend(pair.iter().cloned());
    big.bottom.extend(pair.iter().cloned());
    let lhs = evaluate_g(&big, field, ctx)?;
    let rhs = evaluate_g(&small, field, ctx)?;
    Ok(lhs.value_eq(&rhs))
}
