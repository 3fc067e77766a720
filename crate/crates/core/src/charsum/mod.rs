//! Character sums over `F_q` in double-precision complex arithmetic.
//!
//! Multiplicative characters are indexed by an exponent `k`: `T^k(g^j) =
//! exp(2 pi i k j / (q - 1))` for the field's fixed generator `g`, and
//! `T^k(0) = 0` for every `k`, the trivial character included. The additive
//! character is `theta(x) = exp(2 pi i tr(x) / p)`.
//!
//! These sums are the independent oracle for the `p`-adic layer; the exact
//! Jacobi-sum route lives in [`padic`].

pub mod padic;

use std::f64::consts::TAU;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ffield::{FqElem, FqField};

pub use padic::{gross_koblitz_exhaustive, gross_koblitz_jacobi_check, jacobi_sum_padic};

/// Largest field the complex oracle accepts.
pub const MAX_ORACLE_Q: u64 = 2500;

/// Absolute tolerance per unit of `q` for single sums.
pub const SUM_TOL: f64 = 1e-6;

/// Relative tolerance for products of several Gauss sums.
pub const PRODUCT_TOL: f64 = 1e-5;

/// Precomputed logs, traces and roots of unity for one field.
pub struct CharOracle<'a> {
    field: &'a FqField,
    order: i64,
    logs: Vec<Option<u32>>,
    traces: Vec<u32>,
    roots: Vec<Complex64>,
    p_roots: Vec<Complex64>,
    gauss: OnceLock<Vec<Complex64>>,
}

impl<'a> CharOracle<'a> {
    pub fn new(field: &'a FqField) -> Result<Self> {
        let q = field.q();
        if q > MAX_ORACLE_Q {
            return Err(Error::FieldTooLarge(q));
        }
        let order = (q - 1) as i64;
        let logs = field.elements().map(|x| field.log(x).map(|k| k as u32)).collect();
        let traces = field.elements().map(|x| field.trace(x) as u32).collect();
        let unit = |n: i64| -> Vec<Complex64> {
            (0..n).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / n as f64)).collect()
        };
        Ok(CharOracle {
            field,
            order,
            logs,
            traces,
            roots: unit(order),
            p_roots: unit(field.p() as i64),
            gauss: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &FqField {
        self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    /// `q - 1`, the order of the character group.
    pub fn order(&self) -> i64 {
        self.order
    }

    fn root(&self, j: i64) -> Complex64 {
        self.roots[j.rem_euclid(self.order) as usize]
    }

    /// `T^k(x)`.
    pub fn chi(&self, k: i64, x: FqElem) -> Complex64 {
        match self.logs[x.encoding() as usize] {
            None => Complex64::new(0.0, 0.0),
            Some(j) => self.root(k.rem_euclid(self.order) * j as i64),
        }
    }

    /// `T^k(-1)`, which is real.
    pub fn chi_minus_one(&self, k: i64) -> f64 {
        if k.rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn theta(&self, x: FqElem) -> Complex64 {
        self.p_roots[self.traces[x.encoding() as usize] as usize]
    }

    /// `g(T^k) = sum_x T^k(x) theta(x)`.
    pub fn gauss_sum(&self, k: i64) -> Complex64 {
        let table = self.gauss.get_or_init(|| {
            let mut table = vec![Complex64::new(0.0, 0.0); self.order as usize];
            for x in self.field.nonzero_elements() {
                let j = self.logs[x.encoding() as usize].expect("nonzero") as i64;
                let th = self.theta(x);
                for (kk, slot) in table.iter_mut().enumerate() {
                    *slot += self.root(kk as i64 * j) * th;
                }
            }
            table
        });
        table[k.rem_euclid(self.order) as usize]
    }

    /// `J(T^a, T^b) = sum_x T^a(x) T^b(1 - x)`.
    pub fn jacobi_sum(&self, a: i64, b: i64) -> Complex64 {
        let f = self.field;
        f.elements()
            .map(|x| self.chi(a, x) * self.chi(b, f.sub(f.one(), x)))
            .sum()
    }

    /// Greene's binomial `(T^a choose T^b) = T^b(-1)/q * J(T^a, T^-b)`.
    pub fn binomial(&self, a: i64, b: i64) -> Complex64 {
        self.jacobi_sum(a, -b) * (self.chi_minus_one(b) / self.q() as f64)
    }

    fn binomial_table(&self) -> Vec<Vec<Complex64>> {
        let n = self.order;
        (0..n).map(|a| (0..n).map(|b| self.binomial(a, b)).collect()).collect()
    }

    /// Greene's `{n+1}F{n}(A_0, ..., A_n; B_1, ..., B_n | x)` with
    /// `A_i = T^top[i]` and `B_j = T^bottom[j]`.
    pub fn greene_f(&self, top: &[i64], bottom: &[i64], x: FqElem) -> Result<Complex64> {
        check_rows(top, bottom)?;
        let n = self.order;
        let table = self.binomial_table();
        let binom = |a: i64, b: i64| table[a.rem_euclid(n) as usize][b.rem_euclid(n) as usize];
        let mut total = Complex64::new(0.0, 0.0);
        for c in 0..n {
            let mut term = binom(top[0] + c, c) * self.chi(c, x);
            for (a, b) in top[1..].iter().zip(bottom) {
                term *= binom(a + c, b + c);
            }
            total += term;
        }
        Ok(total * (self.q() as f64 / n as f64))
    }

    /// McCarthy's `{n+1}F{n}^*` built from Gauss-sum quotients.
    pub fn mccarthy_fstar(&self, top: &[i64], bottom: &[i64], x: FqElem) -> Result<Complex64> {
        check_rows(top, bottom)?;
        let n = self.order;
        let g = |k: i64| self.gauss_sum(k);
        let rows = top.len() as i64;
        let mut total = Complex64::new(0.0, 0.0);
        for c in 0..n {
            let mut term = g(-c) * self.chi(c, x) * self.chi_minus_one(c * rows);
            for &a in top {
                term *= g(a + c) / g(a);
            }
            for &b in bottom {
                term *= g(-b - c) / g(-b);
            }
            total += term;
        }
        Ok(total * (-1.0 / n as f64))
    }

    /// `g(T^k) g(T^-k) = q T^k(-1) - (q - 1) delta(T^k)`.
    pub fn gauss_pair_check(&self, k: i64) -> bool {
        let q = self.q() as f64;
        let lhs = self.gauss_sum(k) * self.gauss_sum(-k);
        let delta = if k.rem_euclid(self.order) == 0 { q - 1.0 } else { 0.0 };
        let rhs = q * self.chi_minus_one(k) - delta;
        (lhs - rhs).norm() <= SUM_TOL * q
    }

    /// The Davenport-Hasse product relation for `psi = T^psi` and the `m`
    /// characters `chi` with `chi^m` trivial.
    pub fn davenport_hasse_check(&self, m: i64, psi: i64) -> Result<bool> {
        if m <= 0 || self.order % m != 0 {
            return Err(Error::HypothesisViolation(format!(
                "q = {} is not 1 mod {m}",
                self.q()
            )));
        }
        let step = self.order / m;
        let mut lhs = Complex64::new(1.0, 0.0);
        let mut base = Complex64::new(1.0, 0.0);
        for i in 0..m {
            lhs *= self.gauss_sum(i * step + psi);
            base *= self.gauss_sum(i * step);
        }
        let f = self.field;
        let m_pow = f.pow(f.from_int(m), -m).expect("m is prime to p");
        let rhs = -self.gauss_sum(m * psi) * self.chi(psi, m_pow) * base;
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        Ok((lhs - rhs).norm() <= PRODUCT_TOL * scale)
    }

    /// `-q phi(-1) 2F1(phi, phi; eps | lambda)`, rounded, for the Legendre
    /// curve `y^2 = x(x-1)(x-lambda)`.
    pub fn legendre_trace(&self, lambda: FqElem) -> Result<i64> {
        let half = self.order / 2;
        let v = self.greene_f(&[half, half], &[0], lambda)?;
        let q = self.q() as f64;
        let t = v * (-q * self.chi_minus_one(half));
        round_integer(t, 1e-4 * q)
    }
}

fn check_rows(top: &[i64], bottom: &[i64]) -> Result<()> {
    if top.len() != bottom.len() + 1 {
        return Err(Error::InvalidParameters(format!(
            "expected {} top characters for {} bottom characters, got {}",
            bottom.len() + 1,
            bottom.len(),
            top.len()
        )));
    }
    Ok(())
}

/// The nearest integer to `z`, when `z` is within `tol` of it.
pub fn round_integer(z: Complex64, tol: f64) -> Result<i64> {
    let n = z.re.round();
    if (z - Complex64::new(n, 0.0)).norm() > tol.min(0.5) {
        return Err(Error::InvalidParameters(format!("{z} is not an integer within {tol}")));
    }
    Ok(n as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{build_field, trace_of_frobenius, CurveSpec};

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn trivial_gauss_sum_is_minus_one() {
        for (p, r) in [(5, 1), (3, 2), (7, 2)] {
            let f = build_field(p, r).unwrap();
            let o = CharOracle::new(&f).unwrap();
            assert!(close(o.gauss_sum(0), Complex64::new(-1.0, 0.0), 1e-9));
        }
    }

    #[test]
    fn gauss_sums_have_absolute_value_sqrt_q() {
        let f = build_field(7, 2).unwrap();
        let o = CharOracle::new(&f).unwrap();
        for k in 1..48 {
            assert!((o.gauss_sum(k).norm() - 7.0).abs() < 1e-6, "k={k}");
        }
        let f = build_field(5, 1).unwrap();
        let o = CharOracle::new(&f).unwrap();
        assert!((o.gauss_sum(2).norm() - 5f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn gauss_pairs() {
        for (p, r) in [(13, 1), (5, 2), (7, 2)] {
            let f = build_field(p, r).unwrap();
            let o = CharOracle::new(&f).unwrap();
            assert!((0..o.order()).all(|k| o.gauss_pair_check(k)), "q={}", f.q());
        }
    }

    #[test]
    fn gauss_sum_direct_definition() {
        let f = build_field(3, 2).unwrap();
        let o = CharOracle::new(&f).unwrap();
        for k in 0..8 {
            let direct: Complex64 = f.elements().map(|x| o.chi(k, x) * o.theta(x)).sum();
            assert!(close(direct, o.gauss_sum(k), 1e-9));
        }
    }

    #[test]
    fn jacobi_sums() {
        let f = build_field(5, 2).unwrap();
        let o = CharOracle::new(&f).unwrap();
        assert!(close(o.jacobi_sum(0, 0), Complex64::new(23.0, 0.0), 1e-9));
        for a in 0..24 {
            for b in 0..24 {
                if (a + b) % 24 == 0 {
                    continue;
                }
                let via_gauss = o.gauss_sum(a) * o.gauss_sum(b) / o.gauss_sum(a + b);
                assert!(close(o.jacobi_sum(a, b), via_gauss, 1e-6 * 25.0), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn binomial_with_trivial_bottom() {
        // (A choose eps) = (A choose A) = -1/q + (q-1)/q delta(A)
        let f = build_field(5, 2).unwrap();
        let o = CharOracle::new(&f).unwrap();
        for a in 0..24 {
            let expect = -1.0 / 25.0 + if a == 0 { 24.0 / 25.0 } else { 0.0 };
            assert!(close(o.binomial(a, 0), Complex64::new(expect, 0.0), 1e-9));
            assert!(close(o.binomial(a, a), Complex64::new(expect, 0.0), 1e-9));
        }
    }

    #[test]
    fn davenport_hasse() {
        for (p, r) in [(13, 1), (5, 2)] {
            let f = build_field(p, r).unwrap();
            let o = CharOracle::new(&f).unwrap();
            for m in [2, 3, 4, 6] {
                for psi in 0..o.order() {
                    assert!(o.davenport_hasse_check(m, psi).unwrap(), "q={} m={m} psi={psi}", f.q());
                }
            }
        }
        let f = build_field(7, 1).unwrap();
        let o = CharOracle::new(&f).unwrap();
        assert!(matches!(o.davenport_hasse_check(4, 1), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn greene_matches_point_counts() {
        for (p, r) in [(13, 1), (5, 2)] {
            let f = build_field(p, r).unwrap();
            let o = CharOracle::new(&f).unwrap();
            for lam in f.nonzero_elements() {
                if lam == f.one() || lam == f.from_int(-1) {
                    continue;
                }
                let counted = trace_of_frobenius(&CurveSpec::Legendre { lambda: lam }, &f).unwrap();
                assert_eq!(o.legendre_trace(lam).unwrap(), counted, "q={} lambda={lam:?}", f.q());
            }
        }
    }

    #[test]
    fn greene_vanishes_at_zero() {
        let f = build_field(13, 1).unwrap();
        let o = CharOracle::new(&f).unwrap();
        assert!(close(o.greene_f(&[6, 6], &[0], f.zero()).unwrap(), Complex64::new(0.0, 0.0), 1e-12));
    }

    #[test]
    fn greene_and_mccarthy_forms_differ_by_binomials() {
        // F = -prod_i (A_i choose B_i) F* with the -1/(q-1) normalization of F*
        let f = build_field(13, 1).unwrap();
        let o = CharOracle::new(&f).unwrap();
        let cases: [(&[i64], &[i64]); 3] = [(&[6, 6], &[0]), (&[4, 3], &[1]), (&[6, 6, 6], &[0, 0])];
        for (top, bottom) in cases {
            let factor: Complex64 = top[1..].iter().zip(bottom).map(|(&a, &b)| o.binomial(a, b)).product();
            for lam in 2..12 {
                let x = f.from_int(lam);
                let greene = o.greene_f(top, bottom, x).unwrap();
                let star = o.mccarthy_fstar(top, bottom, x).unwrap();
                assert!(close(greene, -factor * star, 1e-6), "{top:?} {bottom:?} lambda={lam}");
            }
        }
        assert!(o.mccarthy_fstar(&[0, 0], &[0], f.from_int(3)).unwrap().norm().is_finite());
    }

    #[test]
    fn rejects_large_fields_and_bad_rows() {
        let f = build_field(3, 8).unwrap();
        assert!(matches!(CharOracle::new(&f), Err(Error::FieldTooLarge(6561))));
        let f = build_field(5, 1).unwrap();
        let o = CharOracle::new(&f).unwrap();
        assert!(o.greene_f(&[1], &[1], f.one()).is_err());
    }
}
