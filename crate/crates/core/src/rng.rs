//! Seeded, portable randomness for instance generation and sampling.
//!
//! The bit source is PCG64 (PCG-XSL-RR 128/64): a 128-bit LCG with multiplier
//! `0x2360ed051fc65da44385df649fccf645`, output by xorshift-low plus random
//! rotation. A 64-bit seed `s` initializes it as `Pcg64::new(s as u128,
//! 0xa02bdbf7bb3c0a7ac28fa16a64abf96)` (the PCG reference default stream).
//! All derived draws use only `next_u64` and the fixed mappings below, so a
//! seed reproduces the same values on every platform and release.

use rand_pcg::rand_core::Rng as _;
use rand_pcg::Pcg64;

const DEFAULT_STREAM: u128 = 0x0a02_bdbf_7bb3_c0a7_ac28_fa16_a64a_bf96;

#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: Pcg64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: Pcg64::new(seed as u128, DEFAULT_STREAM),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)`: the top 53 bits scaled by `2^-53`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, bound)` by widening multiply
    /// (`(x * bound) >> 64`). `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "empty range");
        let span = (hi as i128 - lo as i128 + 1) as u128;
        if span > u64::MAX as u128 {
            return self.next_u64() as i64;
        }
        (lo as i128 + self.below(span as u64) as i128) as i64
    }

    /// Uniform real in `[lo, hi)`: `lo + (hi - lo) * unit()`.
    pub fn real_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Fisher-Yates shuffle of `0..n`, drawing `below(i + 1)` for
    /// `i = n-1, .., 1`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i as u64 + 1) as usize;
            p.swap(i, j);
        }
        p
    }
}
