//! Jacobi sums of Teichmuller characters in `GR(p^N, r)` and the
//! Gross-Koblitz formula in its Jacobi form:
//!
//! `J(w^-a, w^-b) = -(-p)^e prod_i Gamma_p(<a p^i/(q-1)>) Gamma_p(<b p^i/(q-1)>)
//!                  / Gamma_p(<(a+b) p^i/(q-1)>)`,
//!
//! where `e = sum_i (<a p^i/(q-1)> + <b p^i/(q-1)> - <(a+b) p^i/(q-1)>)`.
//! Writing the identity for the ratio of three Gauss sums removes every
//! fractional power of the uniformizer.

use crate::error::{Error, Result};
use crate::ffield::FqField;
use crate::padic::identities::Tally;
use crate::padic::{ExactRational, GrElem, PadicCtx};

/// `sum_x w-bar^a(x) w-bar^b(1 - x)`, with every character vanishing at 0.
pub fn jacobi_sum_padic(a: i64, b: i64, field: &FqField, ctx: &PadicCtx) -> Result<GrElem> {
    ctx.check_field(field)?;
    let table = ctx.teichmuller_table(field)?;
    let mut total = GrElem::zero(ctx.r());
    for x in field.nonzero_elements() {
        let y = field.sub(field.one(), x);
        if y.is_zero() {
            continue;
        }
        let term = ctx.gr_mul(table.lift_pow(x, -a, field)?, table.lift_pow(y, -b, field)?);
        ctx.gr_add_assign(&mut total, &term);
    }
    Ok(total)
}

/// Compare [`jacobi_sum_padic`] with the Gamma-product side.
pub fn gross_koblitz_jacobi_check(a: i64, b: i64, field: &FqField, ctx: &PadicCtx) -> Result<bool> {
    let order = (ctx.q() - 1) as i64;
    if a.rem_euclid(order) == 0 || b.rem_euclid(order) == 0 || (a + b).rem_euclid(order) == 0 {
        return Err(Error::HypothesisViolation(format!(
            "a = {a}, b = {b} and a + b must all be nonzero mod {order}"
        )));
    }
    let lhs = jacobi_sum_padic(a, b, field, ctx)?;
    Ok(lhs == GrElem::constant(gamma_side(a, b, ctx)?, ctx.r()))
}

fn gamma_side(a: i64, b: i64, ctx: &PadicCtx) -> Result<u64> {
    let order = (ctx.q() - 1) as i64;
    let p = ctx.p() as i64;
    let mut unit = 1u64;
    let mut e_num = 0i64;
    let mut pi = 1i64;
    for _ in 0..ctx.r() {
        let [fa, fb, fab] = [a, b, a + b].map(|c| (c * pi).rem_euclid(order));
        e_num += fa + fb - fab;
        let g = |num: i64| -> Result<u64> { Ok(ctx.gamma_p(&ExactRational::new(num, order))?.value) };
        unit = ctx.mul_mod(unit, ctx.mul_mod(g(fa)?, g(fb)?));
        unit = ctx.mul_mod(unit, ctx.inv_mod(g(fab)?)?);
        pi = pi * p % order;
    }
    debug_assert_eq!(e_num % order, 0);
    let e = (e_num / order) as u32;
    if e >= ctx.precision() {
        return Ok(0);
    }
    let mut v = ctx.mul_mod(unit, ctx.p().pow(e));
    // -(-p)^e
    if e.is_multiple_of(2) {
        v = ctx.reduce(-(v as i128));
    }
    Ok(v)
}

/// Every admissible `(a, b)` for one field.
pub fn gross_koblitz_exhaustive(field: &FqField, ctx: &PadicCtx) -> Result<Tally> {
    let order = (field.q() - 1) as i64;
    let mut tally = Tally::new(format!("Gross-Koblitz Jacobi form, q = {}", field.q()));
    for a in 1..order {
        for b in 1..order {
            if (a + b) % order == 0 {
                continue;
            }
            let ok = gross_koblitz_jacobi_check(a, b, field, ctx)?;
            tally.record(ok, || format!("a = {a}, b = {b}"));
        }
    }
    Ok(tally)
}
