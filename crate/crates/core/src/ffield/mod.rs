//! Finite fields `F_q`, `q = p^r`, backed by discrete-log tables.
//!
//! Elements are stored by their base-`p` encoding: the integer
//! `c_0 + c_1 p + ... + c_{r-1} p^{r-1}` for the residue polynomial
//! `c_0 + c_1 x + ... + c_{r-1} x^{r-1}` modulo the field's defining
//! polynomial. Multiplication goes through the log/antilog tables built
//! once at construction; the field is immutable afterwards.

mod curve;
mod poly;

pub use curve::{
    count_points, count_points_exhaustive, discriminant, trace_of_frobenius, CurveSpec,
    Weierstrass,
};

use crate::arith;
use crate::error::{Error, Result};
use crate::padic::ExactRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Default cap on the number of field elements for which tables are built.
pub const DEFAULT_FIELD_CAP: u64 = 1_000_000;

/// An odd prime power `q = p^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    p: u64,
    r: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if p < 3 || !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::InvalidParameters("extension degree r must be >= 1".into()));
        }
        let q = arith::checked_pow(p, r).ok_or(Error::DegreeTooLarge {
            p,
            r,
            cap: u64::MAX,
        })?;
        Ok(PrimePower { p, r, q })
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
}

/// An element of `F_q`, identified by its base-`p` coefficient encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn encoding(self) -> u64 {
        self.0 as u64
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field `F_q` with a fixed defining polynomial and generator.
#[derive(Debug, Clone)]
pub struct FqField {
    ctx: PrimePower,
    modulus: Vec<u64>,
    generator: FqElem,
    log: Vec<u32>,
    exp: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

/// Build `F_{p^r}` with the default table cap.
pub fn build_field(p: u64, r: u32) -> Result<FqField> {
    FqField::new(p, r)
}

impl FqField {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        Self::with_cap(p, r, DEFAULT_FIELD_CAP)
    }

    /// Build the field, refusing if it has more than `cap` elements.
    ///
    /// The defining polynomial is the lexicographically smallest monic
    /// irreducible of degree `r`, comparing coefficient lists
    /// `[c_0, c_1, ..., c_{r-1}]` from the constant term up. The generator is
    /// the element of smallest encoding whose multiplicative order is `q - 1`.
    pub fn with_cap(p: u64, r: u32, cap: u64) -> Result<Self> {
        if p < 3 || !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = arith::checked_pow(p, r)
            .filter(|&q| q <= cap && q <= u32::MAX as u64)
            .ok_or(Error::DegreeTooLarge { p, r, cap })?;
        let ctx = PrimePower::new(p, r)?;
        let modulus = poly::smallest_irreducible(p, r as usize);

        let order = q - 1;
        let factors = arith::prime_factors(order);
        let mut generator = None;
        for enc in 1..q {
            let g = poly::decode(enc, p, r as usize);
            let is_gen = factors.iter().all(|&l| {
                let h = poly::pow(&g, order / l, &modulus, p);
                !poly::is_one(&h)
            });
            if is_gen {
                generator = Some(enc);
                break;
            }
        }
        let generator = generator.expect("F_q^x is cyclic");

        let mut log = vec![NO_LOG; q as usize];
        let mut exp = vec![0u32; order as usize];
        let g = poly::decode(generator, p, r as usize);
        let mut cur = poly::decode(1, p, r as usize);
        for k in 0..order {
            let enc = poly::encode(&cur, p);
            assert_eq!(log[enc as usize], NO_LOG, "generator has order < q - 1");
            log[enc as usize] = k as u32;
            exp[k as usize] = enc as u32;
            cur = poly::mul(&cur, &g, &modulus, p);
        }
        assert!(poly::is_one(&cur), "generator^(q-1) != 1");

        Ok(FqField {
            ctx,
            modulus,
            generator: FqElem(generator as u32),
            log,
            exp,
        })
    }

    pub fn ctx(&self) -> PrimePower {
        self.ctx
    }

    pub fn p(&self) -> u64 {
        self.ctx.p
    }

    pub fn r(&self) -> u32 {
        self.ctx.r
    }

    pub fn q(&self) -> u64 {
        self.ctx.q
    }

    /// Monic defining polynomial, coefficients low to high (length `r + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> FqElem {
        self.generator
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// Element with the given base-`p` encoding, if it is in range.
    pub fn from_encoding(&self, enc: u64) -> Option<FqElem> {
        (enc < self.q()).then_some(FqElem(enc as u32))
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Option<FqElem> {
        if coeffs.len() > self.r() as usize || coeffs.iter().any(|&c| c >= self.p()) {
            return None;
        }
        Some(FqElem(poly::encode(coeffs, self.p()) as u32))
    }

    /// Coefficients `c_0..c_{r-1}` of the residue polynomial.
    pub fn coeffs(&self, x: FqElem) -> Vec<u64> {
        poly::decode(x.encoding(), self.p(), self.r() as usize)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(arith::reduce_i128(n as i128, self.p()) as u32)
    }

    /// Image of a rational with denominator prime to `p`.
    pub fn from_rational(&self, x: &ExactRational) -> Option<FqElem> {
        let p = self.p();
        let num = (x.numer() % p).to_i128()?;
        let den = (x.denom() % p).to_u64()?;
        let inv = arith::inv_mod(den, p)?;
        let v = arith::mul_mod(arith::reduce_i128(num, p), inv, p);
        Some(FqElem(v as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q() as u32).map(FqElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (1..self.q() as u32).map(FqElem)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.p() as u32;
        if self.r() == 1 {
            return FqElem((a.0 + b.0) % p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut acc, mut pw) = (0u32, 1u32);
        for _ in 0..self.r() {
            acc += ((x % p + y % p) % p) * pw;
            x /= p;
            y /= p;
            pw = pw.wrapping_mul(p);
        }
        FqElem(acc)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        let p = self.p() as u32;
        if self.r() == 1 {
            return FqElem((p - a.0) % p);
        }
        let mut x = a.0;
        let (mut acc, mut pw) = (0u32, 1u32);
        for _ in 0..self.r() {
            acc += ((p - x % p) % p) * pw;
            x /= p;
            pw = pw.wrapping_mul(p);
        }
        FqElem(acc)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() || b.is_zero() {
            return FqElem::ZERO;
        }
        let order = self.q() - 1;
        let k = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % order;
        FqElem(self.exp[k as usize])
    }

    pub fn square(&self, a: FqElem) -> FqElem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        let k = self.log(a)?;
        let order = self.q() - 1;
        Some(FqElem(self.exp[((order - k) % order) as usize]))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Option<FqElem> {
        Some(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer `e`; `None` for a negative power of zero.
    pub fn pow(&self, a: FqElem, e: i64) -> Option<FqElem> {
        if a.is_zero() {
            return match e {
                0 => Some(FqElem::ONE),
                e if e > 0 => Some(FqElem::ZERO),
                _ => None,
            };
        }
        let order = (self.q() - 1) as i128;
        let k = (self.log[a.0 as usize] as i128 * e as i128).rem_euclid(order);
        Some(FqElem(self.exp[k as usize]))
    }

    /// Discrete log to the fixed generator, in `[0, q - 2]`.
    pub fn log(&self, a: FqElem) -> Option<u64> {
        match self.log[a.0 as usize] {
            NO_LOG => None,
            k => Some(k as u64),
        }
    }

    /// `generator^k`.
    pub fn exp(&self, k: i64) -> FqElem {
        let order = (self.q() - 1) as i64;
        FqElem(self.exp[k.rem_euclid(order) as usize])
    }

    /// The quadratic character: 0 at zero, +1 on squares, -1 otherwise.
    pub fn quad_char(&self, a: FqElem) -> i64 {
        match self.log(a) {
            None => 0,
            Some(k) if k % 2 == 0 => 1,
            Some(_) => -1,
        }
    }

    /// Absolute trace to `F_p`, as a residue in `[0, p)`.
    pub fn trace(&self, a: FqElem) -> u64 {
        let mut acc = FqElem::ZERO;
        let mut conj = a;
        for _ in 0..self.r() {
            acc = self.add(acc, conj);
            conj = self.pow(conj, self.p() as i64).expect("nonnegative power");
        }
        debug_assert!(acc.encoding() < self.p());
        acc.encoding()
    }
}
