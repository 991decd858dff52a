//! Small deterministic PRNG for seeded randomized checks.
//!
//! A hand-rolled splitmix64 keeps report output byte-identical across
//! platforms, including the browser build.

use crate::rat::{int, Rat};
use num_bigint::BigInt;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound`; `bound` must be nonzero.
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }

    pub fn chance(&mut self, numer: u64, denom: u64) -> bool {
        self.next_u64() % denom < numer
    }

    /// Small signed rational with numerator in `-9..=9` and denominator in `1..=4`.
    pub fn small_rat(&mut self) -> Rat {
        let numer = self.below(19) as i64 - 9;
        let denom = self.below(4) as i64 + 1;
        Rat::new(BigInt::from(numer), BigInt::from(denom))
    }

    /// Strictly positive small rational.
    pub fn positive_rat(&mut self) -> Rat {
        let numer = self.below(9) as i64 + 1;
        let denom = self.below(4) as i64 + 1;
        Rat::new(BigInt::from(numer), BigInt::from(denom))
    }

    /// Nonnegative small rational, zero with probability ~1/3.
    pub fn nonneg_rat(&mut self) -> Rat {
        if self.chance(1, 3) {
            int(0)
        } else {
            self.positive_rat()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn below_respects_bound() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            assert!(rng.below(13) < 13);
        }
    }
}
