//! Arithmetic in `GR(p^N, r) = (Z/p^N)[x] / (f)` where `f` is the field
//! modulus with integer coefficients.

use smallvec::SmallVec;

use super::PadicCtx;
use crate::arith::mul_mod;
use crate::error::{Error, Result};
use crate::ffield::{FqElem, FqField};

/// Coefficients `c_0..c_{r-1}` mod `p^N`, low degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrElem(SmallVec<[u64; 4]>);

impl GrElem {
    pub fn constant(c: u64, r: u32) -> Self {
        let mut v = SmallVec::from_elem(0, r as usize);
        v[0] = c;
        GrElem(v)
    }

    pub fn zero(r: u32) -> Self {
        GrElem(SmallVec::from_elem(0, r as usize))
    }

    pub fn one(r: u32) -> Self {
        Self::constant(1, r)
    }

    pub fn from_coeffs(c: &[u64]) -> Self {
        GrElem(SmallVec::from_slice(c))
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_constant(&self) -> bool {
        self.0[1..].iter().all(|&c| c == 0)
    }

    pub fn constant_term(&self) -> u64 {
        self.0[0]
    }

    pub fn is_one(&self) -> bool {
        self.0[0] == 1 && self.is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl PadicCtx {
    pub fn gr_add(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let m = self.pn;
        GrElem(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % m).collect())
    }

    pub fn gr_add_assign(&self, a: &mut GrElem, b: &GrElem) {
        let m = self.pn;
        for (x, &y) in a.0.iter_mut().zip(&b.0) {
            *x = (*x + y) % m;
        }
    }

    pub fn gr_neg(&self, a: &GrElem) -> GrElem {
        let m = self.pn;
        GrElem(a.0.iter().map(|&x| (m - x) % m).collect())
    }

    pub fn gr_sub(&self, a: &GrElem, b: &GrElem) -> GrElem {
        self.gr_add(a, &self.gr_neg(b))
    }

    /// Multiply by a scalar in `Z/p^N`.
    pub fn gr_scale(&self, a: &GrElem, c: u64) -> GrElem {
        GrElem(a.0.iter().map(|&x| mul_mod(x, c, self.pn)).collect())
    }

    /// `acc += c * a`.
    pub fn gr_axpy(&self, acc: &mut GrElem, c: u64, a: &GrElem) {
        let m = self.pn;
        for (x, &y) in acc.0.iter_mut().zip(&a.0) {
            *x = (*x + mul_mod(c, y, m)) % m;
        }
    }

    pub fn gr_mul(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let r = self.r as usize;
        let m = self.pn;
        if r == 1 {
            return GrElem::constant(mul_mod(a.0[0], b.0[0], m), 1);
        }
        let mut prod: SmallVec<[u64; 8]> = SmallVec::from_elem(0, 2 * r - 1);
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, m)) % m;
            }
        }
        // x^r = -(f_0 + ... + f_{r-1} x^{r-1})
        for top in (r..2 * r - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for j in 0..r {
                let idx = top - r + j;
                prod[idx] = (prod[idx] + m - mul_mod(c, self.modulus[j], m)) % m;
            }
        }
        GrElem(prod[..r].iter().copied().collect())
    }

    pub fn gr_pow_u(&self, base: &GrElem, mut e: u64) -> GrElem {
        let mut acc = GrElem::one(self.r);
        let mut b = base.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.gr_mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.gr_mul(&b, &b);
            }
        }
        acc
    }

    /// `base^e`; negative `e` requires a unit.
    pub fn gr_pow(&self, base: &GrElem, e: i64) -> Result<GrElem> {
        if e >= 0 {
            Ok(self.gr_pow_u(base, e as u64))
        } else {
            Ok(self.gr_pow_u(&self.gr_inv(base)?, e.unsigned_abs()))
        }
    }

    /// Inverse of a unit: `u^{q-2}` is correct mod `p`, then Newton steps
    /// `v <- v(2 - uv)` double the number of correct digits.
    pub fn gr_inv(&self, u: &GrElem) -> Result<GrElem> {
        if u.0.iter().all(|&c| c % self.p == 0) {
            return Err(Error::NonUnitInverse);
        }
        if self.r == 1 {
            return Ok(GrElem::constant(self.inv_mod(u.0[0])?, 1));
        }
        let mut v = self.gr_pow_u(u, self.q - 2);
        let two = GrElem::constant(2 % self.pn, self.r);
        let mut digits = 1;
        while digits < self.n {
            let uv = self.gr_mul(u, &v);
            v = self.gr_mul(&v, &self.gr_sub(&two, &uv));
            digits *= 2;
        }
        debug_assert!(self.gr_mul(u, &v).is_one());
        Ok(v)
    }
}

/// `omega(g^k)` for `0 <= k < q - 1`, so `omega(x) = table[log x]`.
#[derive(Debug, Clone)]
pub struct TeichmullerTable {
    powers: Vec<GrElem>,
}

impl TeichmullerTable {
    pub(super) fn new(ctx: &PadicCtx, field: &FqField) -> Result<Self> {
        let w = ctx.teichmuller(field.generator(), field)?;
        let order = (field.q() - 1) as usize;
        let mut powers = Vec::with_capacity(order);
        let mut cur = GrElem::one(ctx.r());
        for _ in 0..order {
            powers.push(cur.clone());
            cur = ctx.gr_mul(&cur, &w);
        }
        debug_assert!(cur.is_one());
        Ok(TeichmullerTable { powers })
    }

    /// `omega(g)^k`.
    pub fn power(&self, k: i64) -> &GrElem {
        let n = self.powers.len() as i64;
        &self.powers[k.rem_euclid(n) as usize]
    }

    /// `omega(x)^e` for nonzero `x`.
    pub fn lift_pow(&self, x: FqElem, e: i64, field: &FqField) -> Result<&GrElem> {
        let k = field.log(x).ok_or(Error::ZeroInput)? as i128;
        let n = self.powers.len() as i128;
        Ok(&self.powers[(k * e as i128).rem_euclid(n) as usize])
    }
}
