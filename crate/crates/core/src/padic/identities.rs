//! Executable forms of the `Gamma_p` product identities and the floor /
//! fractional-part identities used to manipulate hypergeometric sums.
//!
//! Each predicate checks one instance. The `*_exhaustive` drivers sweep the
//! full parameter range for one field and return a [`Tally`].

use serde::{Deserialize, Serialize};

use super::{ExactRational, PadicCtx};
use crate::error::{Error, Result};
use crate::ffield::FqField;

/// Outcome of sweeping one identity over a parameter range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub name: String,
    pub checked: u64,
    pub failed: u64,
    pub first_failure: Option<String>,
}

impl Tally {
    pub fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            checked: 0,
            failed: 0,
            first_failure: None,
        }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d)
}

fn int(n: i64) -> ExactRational {
    ExactRational::from_integer(n)
}

/// `Gamma_p(<x>)`.
fn gf(ctx: &PadicCtx, x: &ExactRational) -> Result<u64> {
    Ok(ctx.gamma_p(&x.frac())?.value)
}

fn sign(ctx: &PadicCtx, e: i64) -> u64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        ctx.modulus_int() - 1
    }
}

fn floor(x: &ExactRational) -> i64 {
    x.floor_i64()
}

/// `Gamma_p(x) Gamma_p(1 - x) = (-1)^{a_0(x)}`.
pub fn reflection(ctx: &PadicCtx, x: &ExactRational) -> Result<bool> {
    let a = super::a0(x, ctx.p())?;
    let g1 = ctx.gamma_p(x)?.value;
    let g2 = ctx.gamma_p(&(&ExactRational::one() - x))?.value;
    Ok(ctx.mul_mod(g1, g2) == sign(ctx, a as i64))
}

/// For `0 < a <= q - 2`:
/// `prod_i Gamma_p(<(1 - a/(q-1)) p^i>) Gamma_p(<a p^i/(q-1)>) = (-1)^{r + a}`.
pub fn gamma_pair_product(ctx: &PadicCtx, a: i64) -> Result<bool> {
    let q1 = ctx.q() as i64 - 1;
    let mut acc = 1u64;
    let mut pi = int(1);
    for _ in 0..ctx.r() {
        let x = rat(a, q1);
        acc = ctx.mul_mod(acc, gf(ctx, &(&(&int(1) - &x) * &pi))?);
        acc = ctx.mul_mod(acc, gf(ctx, &(&x * &pi))?);
        pi = pi.mul_int(ctx.p() as i64);
    }
    Ok(acc == sign(ctx, ctx.r() as i64 + a))
}

/// For `a != (q-1)/2`:
/// `prod_i Gamma_p(<(1/2 - a/(q-1)) p^i>) Gamma_p(<(1/2 + a/(q-1)) p^i>) / Gamma_p(<p^i/2>)^2 = (-1)^a`.
pub fn half_shift_quotient(ctx: &PadicCtx, a: i64) -> Result<bool> {
    let q1 = ctx.q() as i64 - 1;
    let half = rat(1, 2);
    let x = rat(a, q1);
    let (mut num, mut den) = (1u64, 1u64);
    let mut pi = int(1);
    for _ in 0..ctx.r() {
        num = ctx.mul_mod(num, gf(ctx, &(&(&half - &x) * &pi))?);
        num = ctx.mul_mod(num, gf(ctx, &(&(&half + &x) * &pi))?);
        let g = gf(ctx, &(&half * &pi))?;
        den = ctx.mul_mod(den, ctx.mul_mod(g, g));
        pi = pi.mul_int(ctx.p() as i64);
    }
    Ok(num == ctx.mul_mod(den, sign(ctx, a)))
}

/// Multiplication formula in the form
/// `omega(t^{-s t a}) prod_i Gamma_p(<-s t p^i a/(q-1)>) prod_{h=1}^{t-1} Gamma_p(<h p^i/t>)
///  = prod_i prod_{h=0}^{t-1} Gamma_p(<p^i (h + c)/t - s p^i a/(q-1)>)`
/// with `s = 1, c = 1` (`plus = false`) or `s = -1, c = 0` (`plus = true`).
/// `conjugate` replaces the Teichmuller factor by its inverse.
pub fn multiplication_formula(
    ctx: &PadicCtx,
    field: &FqField,
    a: i64,
    t: u64,
    plus: bool,
    conjugate: bool,
) -> Result<bool> {
    let p = ctx.p();
    if t == 0 || t.is_multiple_of(p) {
        return Err(Error::InvalidParameters(format!("t = {t} must be prime to p")));
    }
    let q1 = ctx.q() as i64 - 1;
    let s: i64 = if plus { -1 } else { 1 };
    let c: i64 = if plus { 0 } else { 1 };
    let ti = t as i64;
    let x = rat(a, q1);
    let (mut lhs, mut rhs) = (1u64, 1u64);
    let mut pi = int(1);
    for _ in 0..ctx.r() {
        lhs = ctx.mul_mod(lhs, gf(ctx, &(&x * &pi).mul_int(-s * ti))?);
        for h in 1..ti {
            lhs = ctx.mul_mod(lhs, gf(ctx, &(&rat(h, ti) * &pi))?);
        }
        for h in 0..ti {
            let arg = &(&rat(h + c, ti) - &x.mul_int(s)) * &pi;
            rhs = ctx.mul_mod(rhs, gf(ctx, &arg)?);
        }
        pi = pi.mul_int(p as i64);
    }
    let e = -s * ti * a;
    let e = if conjugate { -e } else { e };
    let tp = field.pow(field.from_int(ti), e).expect("t is a unit");
    let w = ctx.teichmuller(tp, field)?;
    Ok(ctx.gr_scale(&w, lhs) == super::GrElem::constant(rhs, ctx.r()))
}

/// `floor(a p^i/(q-1)) + floor(-d a p^i/(q-1)) = sum_{h=1}^{d-1} floor(<h p^i/d> - a p^i/(q-1)) - 1`
/// for `1 <= a <= q - 2`.
pub fn floor_sum_shift(p: u64, r: u32, d: i64, a: i64, i: u32) -> bool {
    let q1 = (p as i64).pow(r) - 1;
    let pi = (p as i64).pow(i);
    let x = rat(a * pi, q1);
    let lhs = floor(&x) + floor(&x.mul_int(-d));
    let rhs: i64 = (1..d)
        .map(|h| floor(&(&rat(h * pi, d).frac() - &x)))
        .sum::<i64>()
        - 1;
    lhs == rhs
}

/// Hermite-type identity
/// `floor(l a p^i/(q-1)) = sum_{h=0}^{l-1} floor(<-h p^i/l> + a p^i/(q-1))`.
pub fn floor_hermite(p: u64, r: u32, l: i64, a: i64, i: u32) -> bool {
    let q1 = (p as i64).pow(r) - 1;
    let pi = (p as i64).pow(i);
    let x = rat(a * pi, q1);
    let lhs = floor(&x.mul_int(l));
    let rhs: i64 = (0..l)
        .map(|h| floor(&(&rat(-h * pi, l).frac() + &x)))
        .sum();
    lhs == rhs
}

/// Halving identities for `x`:
/// `floor(<x p^i> -+ 2j p^i/(q-1)) = floor(<x p^i/2> -+ j p^i/(q-1)) + floor(<(1+x) p^i/2> -+ j p^i/(q-1))`.
/// Both signs are checked.
pub fn floor_halving(p: u64, r: u32, x: &ExactRational, j: i64, i: u32) -> bool {
    let q1 = (p as i64).pow(r) - 1;
    let pi = int((p as i64).pow(i));
    let y = rat(j * (p as i64).pow(i), q1);
    let xp = (x * &pi).frac();
    let xh = (&(x * &pi) / &int(2)).frac();
    let x1h = (&(&(&int(1) + x) * &pi) / &int(2)).frac();
    [1i64, -1].iter().all(|&s| {
        let ys = y.mul_int(s);
        let lhs = floor(&(&xp - &ys.mul_int(2)));
        let rhs = floor(&(&xh - &ys)) + floor(&(&x1h - &ys));
        lhs == rhs
    })
}

/// Four-gamma quarter-shift product for `q = 1 mod 4`,
/// `n` not in `{(q-1)/4, 3(q-1)/4}`: the `(-p)` exponent vanishes and the
/// unit part is 1.
pub fn quarter_shift_product(ctx: &PadicCtx, n: i64) -> Result<bool> {
    let q1 = ctx.q() as i64 - 1;
    let p = ctx.p() as i64;
    let quarter = rat(1, 4);
    let three_q = rat(3, 4);
    let (mut num, mut den) = (1u64, 1u64);
    let mut s_total = 0i64;
    for i in 0..ctx.r() {
        let pi = int(p.pow(i));
        let y = rat(n * p.pow(i), q1);
        s_total -= floor(&(&three_q - &y))
            + floor(&(&quarter + &y))
            + floor(&(&three_q + &y))
            + floor(&(&quarter - &y));
        let z = rat(n, q1);
        for arg in [&quarter + &z, &three_q - &z, &quarter - &z, &three_q + &z] {
            num = ctx.mul_mod(num, gf(ctx, &(&arg * &pi))?);
        }
        let g = ctx.mul_mod(gf(ctx, &(&three_q * &pi))?, gf(ctx, &(&quarter * &pi))?);
        den = ctx.mul_mod(den, ctx.mul_mod(g, g));
    }
    Ok(s_total == 0 && num == den)
}

/// For `p = -1 mod d`, `r = 1`, `0 <= n <= p - 2`:
/// `Gamma_p(<-1/d + n/(p-1)>) Gamma_p(<-(d-1)/d + n/(p-1)>) Gamma_p(<1/d - n/(p-1)>) Gamma_p(<(d-1)/d - n/(p-1)>)
///  / (Gamma_p(1/d)^2 Gamma_p((d-1)/d)^2) = 1`.
pub fn root_quotient(ctx: &PadicCtx, d: i64, n: i64) -> Result<bool> {
    let p = ctx.p() as i64;
    if ctx.r() != 1 || (p + 1) % d != 0 {
        return Err(Error::HypothesisViolation(format!(
            "requires r = 1 and p = -1 mod {d}"
        )));
    }
    let z = rat(n, p - 1);
    let mut num = 1u64;
    for arg in [
        &rat(-1, d) + &z,
        &rat(-(d - 1), d) + &z,
        &rat(1, d) - &z,
        &rat(d - 1, d) - &z,
    ] {
        num = ctx.mul_mod(num, gf(ctx, &arg)?);
    }
    let g = ctx.mul_mod(gf(ctx, &rat(1, d))?, gf(ctx, &rat(d - 1, d))?);
    Ok(num == ctx.mul_mod(g, g))
}

/// Reflection over every `k/(q-1)` and a grid of small-denominator rationals.
pub fn reflection_exhaustive(ctx: &PadicCtx) -> Result<Tally> {
    let mut t = Tally::new(format!("reflection q={}", ctx.q()));
    let q1 = ctx.q() as i64 - 1;
    let p = ctx.p() as i64;
    let mut xs: Vec<ExactRational> = (0..=q1).map(|k| rat(k, q1)).collect();
    for d in 1..=24i64 {
        if d % p == 0 {
            continue;
        }
        for n in -2 * d..=2 * d {
            xs.push(rat(n, d));
        }
    }
    for x in xs {
        let ok = reflection(ctx, &x)?;
        t.record(ok, || format!("x = {x}"));
    }
    Ok(t)
}

pub fn gamma_pair_product_exhaustive(ctx: &PadicCtx) -> Result<Tally> {
    let mut t = Tally::new(format!("gamma pair product q={}", ctx.q()));
    for a in 1..=ctx.q() as i64 - 2 {
        t.record(gamma_pair_product(ctx, a)?, || format!("a = {a}"));
    }
    Ok(t)
}

pub fn half_shift_quotient_exhaustive(ctx: &PadicCtx) -> Result<Tally> {
    let mut t = Tally::new(format!("half-shift quotient q={}", ctx.q()));
    let q1 = ctx.q() as i64 - 1;
    for a in (0..q1).filter(|&a| 2 * a != q1) {
        t.record(half_shift_quotient(ctx, a)?, || format!("a = {a}"));
    }
    Ok(t)
}

/// Both multiplication formulas for every `a` and the given `t` values.
pub fn multiplication_formula_exhaustive(
    ctx: &PadicCtx,
    field: &FqField,
    ts: &[u64],
    conjugate: bool,
) -> Result<Tally> {
    let mut t = Tally::new(format!("multiplication formula q={}", ctx.q()));
    for &tt in ts.iter().filter(|&&tt| tt % ctx.p() != 0) {
        for a in 0..ctx.q() as i64 - 1 {
            for plus in [false, true] {
                let ok = multiplication_formula(ctx, field, a, tt, plus, conjugate)?;
                t.record(ok, || format!("t = {tt}, a = {a}, plus = {plus}"));
            }
        }
    }
    Ok(t)
}

/// Floor identities over all `a`, `i` and the given denominators.
pub fn floor_identities_exhaustive(p: u64, r: u32, dens: &[i64]) -> Tally {
    let mut t = Tally::new(format!("floor identities q={}", p.pow(r)));
    let q1 = (p as i64).pow(r) - 1;
    for &d in dens.iter().filter(|&&d| d % p as i64 != 0) {
        for i in 0..r {
            for a in 0..q1 {
                if a >= 1 && d >= 2 {
                    t.record(floor_sum_shift(p, r, d, a, i), || {
                        format!("shift d={d} a={a} i={i}")
                    });
                }
                t.record(floor_hermite(p, r, d, a, i), || {
                    format!("hermite l={d} a={a} i={i}")
                });
                for m in 0..d {
                    let x = rat(m, d);
                    t.record(floor_halving(p, r, &x, a, i), || {
                        format!("halving x={x} j={a} i={i}")
                    });
                }
            }
        }
    }
    t
}

pub fn quarter_shift_product_exhaustive(ctx: &PadicCtx) -> Result<Tally> {
    let mut t = Tally::new(format!("quarter-shift product q={}", ctx.q()));
    let q1 = ctx.q() as i64 - 1;
    if q1 % 4 != 0 {
        return Err(Error::HypothesisViolation("requires q = 1 mod 4".into()));
    }
    for n in (0..q1).filter(|&n| n != q1 / 4 && n != 3 * q1 / 4) {
        t.record(quarter_shift_product(ctx, n)?, || format!("n = {n}"));
    }
    Ok(t)
}

pub fn root_quotient_exhaustive(ctx: &PadicCtx, d: i64) -> Result<Tally> {
    let mut t = Tally::new(format!("root quotient p={} d={d}", ctx.p()));
    for n in 0..=ctx.p() as i64 - 2 {
        t.record(root_quotient(ctx, d, n)?, || format!("n = {n}"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_field;

    fn ctx(p: u64, r: u32, n: u32) -> (FqField, PadicCtx) {
        let f = build_field(p, r).unwrap();
        let c = PadicCtx::new(&f, n).unwrap();
        (f, c)
    }

    #[test]
    fn reflection_holds() {
        for &(p, r) in &[(5u64, 2u32), (7, 1), (3, 3)] {
            let (_, c) = ctx(p, r, 3);
            let t = reflection_exhaustive(&c).unwrap();
            assert!(t.passed(), "{t:?}");
        }
    }

    #[test]
    fn gamma_pair_and_half_shift() {
        for &(p, r) in &[(5u64, 2u32), (3, 3), (7, 2), (11, 2)] {
            let (_, c) = ctx(p, r, 3);
            assert!(gamma_pair_product_exhaustive(&c).unwrap().passed());
            assert!(half_shift_quotient_exhaustive(&c).unwrap().passed());
        }
    }

    #[test]
    fn multiplication_formulas() {
        for &(p, r) in &[(5u64, 2u32), (7, 1), (13, 1), (3, 3)] {
            let (f, c) = ctx(p, r, 3);
            let t = multiplication_formula_exhaustive(&c, &f, &[1, 2, 3, 4, 6], false).unwrap();
            assert!(t.passed(), "{t:?}");
        }
        let (f, c) = ctx(5, 2, 3);
        let conj = multiplication_formula_exhaustive(&c, &f, &[2, 3], true).unwrap();
        assert!(conj.failed > 0);
    }

    #[test]
    fn floor_identities() {
        let t = floor_identities_exhaustive(5, 2, &[2, 3, 4, 6, 8, 12]);
        assert!(t.passed(), "{t:?}");
        let t = floor_identities_exhaustive(3, 3, &[2, 4, 8]);
        assert!(t.passed(), "{t:?}");
    }

    #[test]
    fn quarter_shift() {
        for &(p, r) in &[(5u64, 2u32), (13, 1), (3, 2)] {
            let (_, c) = ctx(p, r, 3);
            let t = quarter_shift_product_exhaustive(&c).unwrap();
            assert!(t.passed(), "{t:?}");
        }
    }

    #[test]
    fn root_quotients() {
        for &(p, d) in &[(11u64, 4i64), (11, 12), (5, 3), (5, 6), (7, 4), (5, 2)] {
            let (_, c) = ctx(p, 1, 3);
            let t = root_quotient_exhaustive(&c, d).unwrap();
            assert!(t.passed(), "{t:?}");
        }
        let (_, c) = ctx(7, 1, 2);
        assert!(root_quotient(&c, 3, 0).is_err());
    }
}
