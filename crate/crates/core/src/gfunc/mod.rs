//! McCarthy's `nGn[a; b | t]_q` evaluated exactly in `GR(p^N, r)`.
//!
//! For each `a` in `[0, q-2]` the summand is
//! `(-1)^{an} omega-bar^a(t) prod_{k,i} (-p)^{e_{k,i}(a)} Gamma-quotients`,
//! where `e_{k,i}(a) = -floor(<a_k p^i> - a p^i/(q-1)) - floor(<-b_k p^i> + a p^i/(q-1))`
//! lies in `{-1, 0, 1}`. The total exponent can be negative, so the sum is
//! accumulated at a raised working precision and the common power of `-p`
//! is divided out at the end.

mod identities;

pub use identities::{check_reduction_identity, check_splitting_identity};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, floor_div};
use crate::error::{Error, Result};
use crate::ffield::{FqElem, FqField};
use crate::padic::{ExactRational, GrElem, PadicCtx, PadicInt};

/// Full input of one evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GParams {
    pub top: Vec<ExactRational>,
    pub bottom: Vec<ExactRational>,
    pub t: FqElem,
}

impl GParams {
    pub fn new(top: Vec<ExactRational>, bottom: Vec<ExactRational>, t: FqElem) -> Result<Self> {
        if top.is_empty() || top.len() != bottom.len() {
            return Err(Error::InvalidParameters(format!(
                "top and bottom rows must have equal nonzero length (got {} and {})",
                top.len(),
                bottom.len()
            )));
        }
        Ok(GParams { top, bottom, t })
    }

    /// Parameters from small-integer fractions `(num, den)`.
    pub fn from_fracs(top: &[(i64, i64)], bottom: &[(i64, i64)], t: FqElem) -> Result<Self> {
        let conv = |v: &[(i64, i64)]| v.iter().map(|&(n, d)| ExactRational::new(n, d)).collect();
        Self::new(conv(top), conv(bottom), t)
    }

    pub fn n(&self) -> usize {
        self.top.len()
    }
}

/// A value of `nGn`, known to absolute precision `p^precision`.
///
/// The value is `padic / p^scale`; `padic` is held modulo
/// `p^(precision + scale)`. Integral values have `scale = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GValue {
    pub padic: PadicInt,
    pub scale: u32,
    pub precision: u32,
    pub integer: Option<i64>,
}

impl GValue {
    pub fn is_integral(&self) -> bool {
        self.scale == 0
    }

    fn p(&self) -> u64 {
        self.padic.p
    }

    /// `value * p^s mod p^(precision + s)` for `s >= scale`.
    fn scaled_to(&self, s: u32) -> u64 {
        let p = self.p();
        let m = p.pow(self.precision + s);
        arith::mul_mod(self.padic.value, p.pow(s - self.scale), m)
    }

    /// Equality at the common absolute precision.
    pub fn value_eq(&self, other: &GValue) -> bool {
        assert_eq!(self.p(), other.p());
        let prec = self.precision.min(other.precision);
        let s = self.scale.max(other.scale);
        let m = self.p().pow(prec + s);
        self.scaled_to(s) % m == other.scaled_to(s) % m
    }

    pub fn add(&self, other: &GValue) -> GValue {
        assert_eq!(self.p(), other.p());
        let p = self.p();
        let prec = self.precision.min(other.precision);
        let s = self.scale.max(other.scale);
        let m = p.pow(prec + s);
        let v = (self.scaled_to(s) % m + other.scaled_to(s) % m) % m;
        normalize(p, v, s, prec)
    }

    /// Attach the integer representative within `bound`.
    pub fn with_integer(mut self, bound: u64) -> Result<GValue> {
        self.integer = Some(reconstruct_integer(&self, bound)?);
        Ok(self)
    }
}

/// Lower `scale` as far as the `p`-divisibility of `v` allows.
fn normalize(p: u64, mut v: u64, mut scale: u32, precision: u32) -> GValue {
    while scale > 0 && v.is_multiple_of(p) {
        v /= p;
        scale -= 1;
    }
    GValue {
        padic: PadicInt {
            p,
            precision: precision + scale,
            value: v % p.pow(precision + scale),
        },
        scale,
        precision,
        integer: None,
    }
}

/// The unique `m` with `|m| <= bound` and `m = v mod p^N`.
pub fn reconstruct_integer(v: &GValue, bound: u64) -> Result<i64> {
    if !v.is_integral() {
        return Err(Error::NonIntegralResult);
    }
    let modulus = v.padic.modulus();
    if modulus <= 2 * bound {
        return Err(Error::PrecisionUnderflow { modulus, bound });
    }
    let m = arith::symmetric_residue(v.padic.value, modulus);
    if m.unsigned_abs() > bound as u128 {
        return Err(Error::NoRepresentative {
            residue: v.padic.value,
            modulus,
            bound,
        });
    }
    Ok(m as i64)
}

/// Smallest `N` with `p^N > 2 * bound`.
pub fn choose_precision(p: u64, bound: u64) -> u32 {
    let target = 2 * bound as u128;
    let mut n = 1u32;
    let mut pn = p as u128;
    while pn <= target {
        pn *= p as u128;
        n += 1;
    }
    n
}

/// `ceil(4 sqrt(q)) + 4`, a bound for sums of two Frobenius traces plus small
/// character-value corrections.
pub fn trace_sum_bound(q: u64) -> u64 {
    arith::ceil_sqrt(16 * q) + 4
}

/// Per-`(k, i)` data. `<a_k p^i> = u/den_a`, `<-b_k p^i> = v/den_b`.
struct Slot {
    u: i128,
    den_a: i128,
    v: i128,
    den_b: i128,
    pi: i128,
    inv_a: u64,
    inv_b: u64,
}

fn frac_parts(x: &ExactRational, pi: i128) -> Result<(i128, i128)> {
    let (n, d) = x
        .to_i128_parts()
        .filter(|&(n, d)| d < (1 << 31) && n.abs() < (1 << 62))
        .ok_or_else(|| Error::InvalidParameters(format!("parameter {x} is too large")))?;
    Ok(((n % d * (pi % d)).rem_euclid(d), d))
}

/// Evaluate `nGn[top; bottom | t]_q` to precision `N` of `ctx`.
pub fn evaluate_g(params: &GParams, field: &FqField, ctx: &PadicCtx) -> Result<GValue> {
    ctx.check_field(field)?;
    if params.t.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let p = ctx.p();
    for x in params.top.iter().chain(&params.bottom) {
        if x.denom_divisible_by(p) {
            return Err(Error::DenominatorDivisibleByP(x.to_string()));
        }
    }
    let n = params.n();
    let q = ctx.q();
    let d = (q - 1) as i128;
    let r = ctx.r();

    let mut slots = Vec::with_capacity(n * r as usize);
    for (a_k, b_k) in params.top.iter().zip(&params.bottom) {
        let neg_b = -b_k;
        let mut pi = 1i128;
        for _ in 0..r {
            let (u, den_a) = frac_parts(a_k, pi)?;
            let (v, den_b) = frac_parts(&neg_b, pi)?;
            slots.push(Slot {
                u,
                den_a,
                v,
                den_b,
                pi,
                inv_a: 0,
                inv_b: 0,
            });
            pi *= p as i128;
        }
    }

    // exponent of (-p) in each summand
    let exponents: Vec<i64> = (0..d)
        .into_par_iter()
        .map(|a| {
            slots
                .iter()
                .map(|s| {
                    let api = a * s.pi;
                    let f1 = floor_div(s.u * d - api * s.den_a, s.den_a * d);
                    let f2 = floor_div(s.v * d + api * s.den_b, s.den_b * d);
                    -(f1 + f2) as i64
                })
                .sum()
        })
        .collect();
    let emin = *exponents.iter().min().expect("q > 1");
    let shift = (-emin).max(0) as u32;
    let n_work = ctx.precision() + shift;
    let wctx = ctx.with_precision(n_work)?;
    let pw = wctx.modulus_int();

    let dmod = (d as u64) % pw;
    let mut denom_gamma = 1u64;
    for s in slots.iter_mut() {
        s.inv_a = wctx.inv_mod(arith::mul_mod(s.den_a as u64, dmod, pw))?;
        s.inv_b = wctx.inv_mod(arith::mul_mod(s.den_b as u64, dmod, pw))?;
        // <a_k p^i> = u D / (den_a D)
        let ga = wctx.gamma_int(wctx.mul_mod(wctx.mul_mod(s.u as u64, dmod), s.inv_a));
        let gb = wctx.gamma_int(wctx.mul_mod(wctx.mul_mod(s.v as u64, dmod), s.inv_b));
        denom_gamma = wctx.mul_mod(denom_gamma, wctx.mul_mod(ga, gb));
    }
    let denom_inv = wctx.inv_mod(denom_gamma)?;

    let omega_inv = wctx.gr_inv(&wctx.teichmuller(params.t, field)?)?;
    let p_pows: Vec<u64> = (0..n_work).map(|k| p.pow(k)).collect();

    let summand = |a: i128| -> Option<u64> {
        let rel = exponents[a as usize] + shift as i64;
        if rel >= n_work as i64 {
            return None;
        }
        let mut c = wctx.mul_mod(denom_inv, p_pows[rel as usize]);
        let mut neg = (a * n as i128 + rel as i128) % 2 == 1;
        for s in &slots {
            let api = a * s.pi;
            let num_a = (s.u * d - api * s.den_a).rem_euclid(s.den_a * d) as u64;
            let num_b = (s.v * d + api * s.den_b).rem_euclid(s.den_b * d) as u64;
            let ga = wctx.gamma_int(wctx.mul_mod(num_a % pw, s.inv_a));
            let gb = wctx.gamma_int(wctx.mul_mod(num_b % pw, s.inv_b));
            c = wctx.mul_mod(c, wctx.mul_mod(ga, gb));
        }
        // the overall factor is -1/(q-1)
        neg = !neg;
        Some(if neg { (pw - c) % pw } else { c })
    };

    let chunk = ((d as usize) / (rayon::current_num_threads() * 4)).max(256) as i128;
    let starts: Vec<i128> = (0..d).step_by(chunk as usize).collect();
    let total = starts
        .into_par_iter()
        .map(|start| {
            let end = (start + chunk).min(d);
            let mut w = wctx.gr_pow_u(&omega_inv, start as u64);
            let mut acc = GrElem::zero(r);
            for a in start..end {
                if let Some(c) = summand(a) {
                    wctx.gr_axpy(&mut acc, c, &w);
                }
                w = wctx.gr_mul(&w, &omega_inv);
            }
            acc
        })
        .reduce(|| GrElem::zero(r), |x, y| wctx.gr_add(&x, &y));
    let total = wctx.gr_scale(&total, wctx.inv_mod(dmod)?);
    if !total.is_constant() {
        return Err(Error::NonConstantResult);
    }

    // value = total * (-p)^{-shift}
    let mut s0 = total.constant_term();
    if shift % 2 == 1 {
        s0 = (pw - s0) % pw;
    }
    let mut v = 0u32;
    while v < shift && s0 % p == 0 {
        s0 /= p;
        v += 1;
    }
    // s0 is now total / p^v, known mod p^(N + shift - v)
    Ok(normalize(p, s0, shift - v, ctx.precision()))
}

/// Evaluate and reconstruct the integer value within `bound`.
pub fn evaluate_g_integer(
    params: &GParams,
    field: &FqField,
    ctx: &PadicCtx,
    bound: u64,
) -> Result<GValue> {
    let modulus = ctx.modulus_int();
    if modulus <= 2 * bound {
        return Err(Error::PrecisionUnderflow { modulus, bound });
    }
    evaluate_g(params, field, ctx)?.with_integer(bound)
}

#[cfg(test)]
mod tests;
