//! Dense polynomials over `F_p`, used only while constructing a field.

use crate::arith::{inv_mod, mul_mod};

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(super) fn decode(mut enc: u64, p: u64, r: usize) -> Vec<u64> {
    let mut out = vec![0; r];
    for c in out.iter_mut() {
        *c = enc % p;
        enc /= p;
    }
    out
}

pub(super) fn encode(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

pub(super) fn is_one(a: &[u64]) -> bool {
    a.first() == Some(&1) && a[1..].iter().all(|&c| c == 0)
}

/// Remainder of `a` modulo the monic `f`, padded to length `deg f`.
fn rem_monic(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    let r = f.len() - 1;
    for top in (r..a.len()).rev() {
        let c = a[top];
        if c == 0 {
            continue;
        }
        for (j, &fj) in f.iter().enumerate() {
            let idx = top - r + j;
            a[idx] = (a[idx] + p - mul_mod(c, fj, p)) % p;
        }
    }
    a.resize(r, 0);
    a
}

pub(super) fn mul(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    rem_monic(prod, f, p)
}

pub(super) fn pow(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let r = f.len() - 1;
    let mut acc = vec![0u64; r];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &b, f, p);
        }
        b = mul(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

/// Polynomial remainder for arbitrary (non-monic) divisors.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], p).expect("p prime");
    let mut a = a.to_vec();
    while let Some(da) = degree(&a) {
        if da < db {
            break;
        }
        let c = mul_mod(a[da], lead_inv, p);
        for (ai, &bj) in a[da - db..=da].iter_mut().zip(&b[..=db]) {
            *ai = (*ai + p - mul_mod(c, bj, p)) % p;
        }
    }
    trim(a)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while degree(&b).is_some() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: `f` of degree `r` is irreducible iff it has no factor of
/// degree `<= r/2`, i.e. `gcd(x^{p^i} - x, f) = 1` for `i <= r/2`.
pub(super) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let r = f.len() - 1;
    if r == 1 {
        return true;
    }
    let mut x = vec![0u64; r];
    x[1] = 1;
    let mut frob = x.clone();
    for _ in 1..=r / 2 {
        frob = pow(&frob, p, f, p);
        let mut diff = frob.clone();
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(f, &diff, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `r`, comparing the
/// coefficient list from the constant term upward.
pub(super) fn smallest_irreducible(p: u64, r: usize) -> Vec<u64> {
    let total = p.pow(r as u32);
    for idx in 0..total {
        // constant term is the most significant digit of idx
        let digits = decode(idx, p, r);
        let mut f: Vec<u64> = digits.into_iter().rev().collect();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force irreducibility for tiny cases: no monic factor of degree
    /// 1..=r/2 divides f.
    fn brute_irreducible(f: &[u64], p: u64) -> bool {
        let r = f.len() - 1;
        for d in 1..=r / 2 {
            for idx in 0..p.pow(d as u32) {
                let mut g = decode(idx, p, d);
                g.push(1);
                if degree(&poly_rem(f, &g, p)).is_none() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for &(p, r) in &[(3u64, 2usize), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (5, 4)] {
            for idx in 0..p.pow(r as u32) {
                let mut f = decode(idx, p, r);
                f.push(1);
                assert_eq!(is_irreducible(&f, p), brute_irreducible(&f, p), "{f:?} mod {p}");
            }
        }
    }

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(smallest_irreducible(7, 1), vec![0, 1]);
        // x^2 + 1 is irreducible mod 3 and 7, reducible mod 5
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(7, 2), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(5, 2), vec![1, 1, 1]);
    }
}
