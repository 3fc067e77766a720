//! `Gamma_p` on integers mod `p^N`.
//!
//! `Gamma_p(x) mod p^N` depends only on `x mod p^N`, so every argument is
//! reduced to an integer `m` in `[0, p^N)` and evaluated with the recurrence
//! `Gamma_p(m + 1) = -Gamma_p(m) * (m if p does not divide m, else 1)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::arith::mul_mod;

/// Moduli up to this size get a full lookup table.
pub const GAMMA_TABLE_CAP: u64 = 10_000_000;

#[derive(Debug)]
pub(super) struct GammaCache {
    p: u64,
    pn: u64,
    table: OnceLock<Vec<u64>>,
    memo: Mutex<HashMap<u64, u64>>,
}

impl GammaCache {
    pub(super) fn new(p: u64, pn: u64) -> Self {
        GammaCache {
            p,
            pn,
            table: OnceLock::new(),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub(super) fn get(&self, m: u64) -> u64 {
        debug_assert!(m < self.pn);
        if self.pn <= GAMMA_TABLE_CAP {
            return self.table.get_or_init(|| self.build_table())[m as usize];
        }
        if let Some(&v) = self.memo.lock().unwrap().get(&m) {
            return v;
        }
        let v = gamma_direct(m, self.p, self.pn);
        self.memo.lock().unwrap().insert(m, v);
        v
    }

    fn build_table(&self) -> Vec<u64> {
        let mut t = Vec::with_capacity(self.pn as usize);
        let mut g = 1u64;
        for m in 0..self.pn {
            t.push(g);
            let factor = if m % self.p == 0 { 1 } else { m };
            g = (self.pn - mul_mod(g, factor, self.pn)) % self.pn;
        }
        t
    }
}

/// `(-1)^m * prod_{0<j<m, p not dividing j} j mod pn`, with `Gamma_p(0) = 1`.
pub(super) fn gamma_direct(m: u64, p: u64, pn: u64) -> u64 {
    let mut acc = 1u64 % pn;
    for j in 1..m {
        if j % p != 0 {
            acc = mul_mod(acc, j, pn);
        }
    }
    if m % 2 == 1 {
        acc = (pn - acc) % pn;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_definition() {
        for &(p, pn) in &[(3u64, 27u64), (5, 125), (7, 49), (11, 121)] {
            let cache = GammaCache::new(p, pn);
            for m in 0..pn {
                assert_eq!(cache.get(m), gamma_direct(m, p, pn), "p={p} m={m}");
            }
        }
    }

    #[test]
    fn memo_path_matches_definition() {
        let pn = 3u64.pow(15);
        assert!(pn > GAMMA_TABLE_CAP);
        let cache = GammaCache::new(3, pn);
        for m in [0, 1, 2, 3, 10, 1000, 12345] {
            assert_eq!(cache.get(m), gamma_direct(m, 3, pn));
            assert_eq!(cache.get(m), gamma_direct(m, 3, pn));
        }
    }

    #[test]
    fn values_are_units() {
        let cache = GammaCache::new(5, 625);
        assert!((0..625).all(|m| !cache.get(m).is_multiple_of(5)));
    }

    #[test]
    fn lipschitz_consistency() {
        // x = y mod p^M implies Gamma_p(x) = Gamma_p(y) mod p^M
        let (p, pn) = (5u64, 3125u64);
        let cache = GammaCache::new(p, pn);
        for m_exp in 1..=4u32 {
            let pm = p.pow(m_exp);
            for x in (0..pn).step_by(37) {
                let y = (x + pm * 3) % pn;
                assert_eq!(cache.get(x) % pm, cache.get(y) % pm);
            }
        }
    }
}
