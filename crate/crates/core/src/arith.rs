//! Small machine-integer helpers shared by the field and ring layers.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Reduce a signed integer into `[0, m)`.
#[inline]
pub fn reduce_i128(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// `p^e`, or `None` on overflow past `u64`.
pub fn checked_pow(p: u64, e: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..e {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

/// Largest integer whose square is at most `n`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Smallest integer whose square is at least `n`.
pub fn ceil_sqrt(n: u64) -> u64 {
    let s = isqrt(n);
    if s * s == n {
        s
    } else {
        s + 1
    }
}

/// Symmetric representative of `v mod m` in `(-m/2, m/2]`.
pub fn symmetric_residue(v: u64, m: u64) -> i128 {
    let v = v % m;
    if v > m / 2 {
        v as i128 - m as i128
    } else {
        v as i128
    }
}

/// `floor(a / b)` for `b > 0`.
#[inline]
pub fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
