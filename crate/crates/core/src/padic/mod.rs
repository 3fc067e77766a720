//! Truncated `p`-adic arithmetic: `Z/p^N`, the Galois ring `GR(p^N, r)`,
//! Teichmuller lifts and Morita's `p`-adic gamma function.

mod gamma;
pub mod identities;
mod rational;
mod ring;

pub use gamma::GAMMA_TABLE_CAP;
pub use rational::{ExactRational, ParseRationalError};
pub use ring::{GrElem, TeichmullerTable};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::ffield::{FqElem, FqField};

/// Largest supported `p^N`; keeps sums of two residues inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 62;

/// Fractional part `x - floor(x)`.
pub fn frac(x: &ExactRational) -> ExactRational {
    x.frac()
}

/// The representative of `x mod p` in `{1, ..., p}`.
pub fn a0(x: &ExactRational, p: u64) -> Result<u64> {
    let m = x
        .residue(p)
        .ok_or_else(|| Error::DenominatorDivisibleByP(x.to_string()))?;
    Ok(if m == 0 { p } else { m })
}

/// Precision context for `GR(p^N, r)`, tied to one finite field.
#[derive(Debug, Clone)]
pub struct PadicCtx {
    p: u64,
    r: u32,
    q: u64,
    n: u32,
    pn: u64,
    /// Field modulus with coefficients read as integers in `[0, p)`.
    modulus: Vec<u64>,
    gamma: Arc<gamma::GammaCache>,
    /// Gamma caches for every precision derived from this context.
    siblings: Arc<Mutex<HashMap<u32, Arc<gamma::GammaCache>>>>,
}

impl PadicCtx {
    pub fn new(field: &FqField, n: u32) -> Result<Self> {
        let p = field.p();
        let pn = arith::checked_pow(p, n)
            .filter(|&m| n >= 1 && m <= MAX_MODULUS)
            .ok_or(Error::PrecisionOutOfRange { p, precision: n })?;
        let gamma = Arc::new(gamma::GammaCache::new(p, pn));
        let siblings = Arc::new(Mutex::new(HashMap::from([(n, gamma.clone())])));
        Ok(PadicCtx {
            p,
            r: field.r(),
            q: field.q(),
            n,
            pn,
            modulus: field.modulus().to_vec(),
            gamma,
            siblings,
        })
    }

    /// Same field, different precision. Gamma tables are shared between all
    /// contexts derived from one another.
    pub fn with_precision(&self, n: u32) -> Result<Self> {
        if n == self.n {
            return Ok(self.clone());
        }
        let p = self.p;
        let pn = arith::checked_pow(p, n)
            .filter(|&m| n >= 1 && m <= MAX_MODULUS)
            .ok_or(Error::PrecisionOutOfRange { p, precision: n })?;
        let gamma = self
            .siblings
            .lock()
            .unwrap()
            .entry(n)
            .or_insert_with(|| Arc::new(gamma::GammaCache::new(p, pn)))
            .clone();
        Ok(PadicCtx {
            n,
            pn,
            gamma,
            modulus: self.modulus.clone(),
            siblings: self.siblings.clone(),
            ..*self
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    /// `p^N`.
    pub fn modulus_int(&self) -> u64 {
        self.pn
    }

    pub fn modulus_poly(&self) -> &[u64] {
        &self.modulus
    }

    /// Fails unless `field` is the field this context was built from.
    pub fn check_field(&self, field: &FqField) -> Result<()> {
        if field.p() != self.p || field.r() != self.r || field.modulus() != &self.modulus[..] {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn padic(&self, value: u64) -> PadicInt {
        PadicInt {
            p: self.p,
            precision: self.n,
            value: value % self.pn,
        }
    }

    /// Residue of a signed integer mod `p^N`.
    pub fn reduce(&self, x: i128) -> u64 {
        arith::reduce_i128(x, self.pn)
    }

    #[inline]
    pub fn mul_mod(&self, a: u64, b: u64) -> u64 {
        arith::mul_mod(a, b, self.pn)
    }

    /// Inverse mod `p^N` of a `p`-adic unit.
    pub fn inv_mod(&self, a: u64) -> Result<u64> {
        arith::inv_mod(a, self.pn).ok_or(Error::NonUnitInverse)
    }

    /// `Gamma_p(m) mod p^N` for an integer `0 <= m < p^N`.
    pub fn gamma_int(&self, m: u64) -> u64 {
        self.gamma.get(m)
    }

    /// `Gamma_p(x) mod p^N` for `x` in `Q` with `p` not dividing the denominator.
    pub fn gamma_p(&self, x: &ExactRational) -> Result<PadicInt> {
        let m = x
            .residue(self.pn)
            .ok_or_else(|| Error::DenominatorDivisibleByP(x.to_string()))?;
        Ok(self.padic(self.gamma_int(m)))
    }

    /// Teichmuller lift of a nonzero field element.
    ///
    /// Starts from the coefficient-wise lift and applies `z -> z^q` `N` times;
    /// each step fixes one more `p`-adic digit.
    pub fn teichmuller(&self, t: FqElem, field: &FqField) -> Result<GrElem> {
        if t.is_zero() {
            return Err(Error::ZeroInput);
        }
        self.check_field(field)?;
        let mut z = GrElem::from_coeffs(&field.coeffs(t));
        for _ in 0..self.n {
            z = self.gr_pow_u(&z, self.q);
        }
        debug_assert!(self.gr_pow_u(&z, self.q - 1).is_one());
        Ok(z)
    }

    /// Table of `omega(g^k)` for the field generator `g`, `0 <= k < q - 1`.
    pub fn teichmuller_table(&self, field: &FqField) -> Result<TeichmullerTable> {
        TeichmullerTable::new(self, field)
    }
}

/// An element of `Z/p^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicInt {
    pub p: u64,
    pub precision: u32,
    pub value: u64,
}

impl PadicInt {
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.precision)
    }

    /// Reduce to a lower precision.
    pub fn truncate(&self, precision: u32) -> PadicInt {
        assert!(precision <= self.precision);
        let m = self.p.pow(precision);
        PadicInt {
            p: self.p,
            precision,
            value: self.value % m,
        }
    }

    /// `p`-adic valuation, capped at the precision.
    pub fn valuation(&self) -> u32 {
        let mut v = 0;
        let mut x = self.value;
        while v < self.precision && x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }
}

/// Checks the Gauss multiplication formula for `Gamma_p` with Teichmuller
/// factor `omega(m^e)`, `e = (1 - x)(1 - q)`. With `conjugate` set the factor
/// is `omega(m^{-e})` instead.
pub fn product_formula_holds(
    x: &ExactRational,
    m: u64,
    ctx: &PadicCtx,
    field: &FqField,
    conjugate: bool,
) -> Result<bool> {
    let p = ctx.p();
    if m == 0 || m.is_multiple_of(p) {
        return Err(Error::InvalidParameters(format!("m = {m} must be prime to p")));
    }
    let q1 = ExactRational::from_integer(ctx.q() as i64 - 1);
    let xq = x * &q1;
    if !xq.is_integer() {
        return Err(Error::InvalidParameters(format!("{x} * (q - 1) is not an integer")));
    }
    if x.denom_divisible_by(p) {
        return Err(Error::DenominatorDivisibleByP(x.to_string()));
    }
    let one = ExactRational::one();
    let q = ExactRational::from_integer(ctx.q() as i64);
    let exponent = (&(&one - x) * &(&one - &q)).floor_i64();
    let exponent = if conjugate { -exponent } else { exponent };
    let mr = ExactRational::from_integer(m as i64);

    let mut lhs = 1u64;
    let mut rhs = 1u64;
    let mut pi = ExactRational::one();
    for _ in 0..ctx.r() {
        for h in 0..m {
            let arg = &(&(x + &ExactRational::from_integer(h as i64)) / &mr) * &pi;
            lhs = ctx.mul_mod(lhs, ctx.gamma_p(&arg.frac())?.value);
        }
        rhs = ctx.mul_mod(rhs, ctx.gamma_p(&(x * &pi).frac())?.value);
        for h in 1..m {
            let arg = &ExactRational::new(h as i64, m as i64) * &pi;
            rhs = ctx.mul_mod(rhs, ctx.gamma_p(&arg.frac())?.value);
        }
        pi = pi.mul_int(p as i64);
    }
    let m_pow = field
        .pow(field.from_int(m as i64), exponent)
        .expect("m is a unit in F_q");
    let omega = ctx.teichmuller(m_pow, field)?;
    let rhs = ctx.gr_scale(&omega, rhs);
    Ok(rhs == GrElem::constant(lhs, ctx.r()))
}

/// `prod_i prod_{h<m} Gamma_p(<(x+h)p^i/m>) = omega(m^{(1-x)(1-q)}) prod_i Gamma_p(<x p^i>) prod_{0<h<m} Gamma_p(<h p^i/m>)`
/// for `p` not dividing `m` and `x(q-1)` integral.
pub fn product_formula_check(
    x: &ExactRational,
    m: u64,
    ctx: &PadicCtx,
    field: &FqField,
) -> Result<bool> {
    product_formula_holds(x, m, ctx, field, false)
}
