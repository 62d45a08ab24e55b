//! Seeded randomness shared by every generator in the crate.
//!
//! All randomized outputs (pair sets, Latin squares, triple selections) are
//! driven by SplitMix64 seeded with the user seed as its raw state, so the
//! same seed reproduces the same bits in any language that implements the
//! generator. Reference vector for seed `1234567`:
//! `6457827717110365317, 3203168211198807973, 9817491932198370423,
//! 4593380528125082431, 16408922859458223821`.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

/// 2^-53, the weight of the least significant bit of a unit draw.
const UNIT_SCALE: f64 = 1.0 / (1u64 << 53) as f64;

#[derive(Clone, Debug)]
pub struct Rng {
    inner: SplitMix64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: SplitMix64::seed_from_u64(seed),
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Dyadic rational `k / 2^53` built from the top 53 bits of one draw.
    #[inline]
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * UNIT_SCALE
    }

    /// One draw; true with probability `p`. The comparison is exact because
    /// the unit draw is representable in an `f64`.
    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_unit() < p
    }

    /// Uniform-ish index in `0..bound` as `draw % bound` (bias below 2^-50
    /// for the bounds used here).
    #[inline]
    pub fn below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }

    /// Fisher–Yates from the back: for `i = len-1 .. 1`, swap `i` with `below(i+1)`.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}
