//! Caller-held deterministic pseudo-random source.
//!
//! A plain 64-bit linear congruential generator with Knuth's MMIX
//! constants, `s <- s * 6364136223846793005 + 1442695040888963407`
//! (mod 2^64). Draws use the high 32 bits of the advanced state, so any
//! implementation with the same constants reproduces every sample.

pub const LCG_MULTIPLIER: u64 = 6364136223846793005;
pub const LCG_INCREMENT: u64 = 1442695040888963407;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(LCG_MULTIPLIER).wrapping_add(LCG_INCREMENT);
        self.state
    }

    pub fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    /// Uniform in `0..n` by multiply-shift on the high word. `n` must be nonzero.
    pub fn below(&mut self, n: u32) -> u32 {
        debug_assert!(n > 0);
        ((u64::from(self.next_u32()) * u64::from(n)) >> 32) as u32
    }

    /// Uniform in `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u32;
        lo + i64::from(self.below(span))
    }

    /// A derived generator for an independent stream (e.g. one per trial).
    pub fn fork(&mut self) -> Lcg {
        Lcg::new(self.next_u64() ^ 0x9e37_79b9_7f4a_7c15)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let mut a = Lcg::new(42);
        let mut b = Lcg::new(42);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        // first step from seed 0 is the increment itself
        assert_eq!(Lcg::new(0).next_u64(), LCG_INCREMENT);
    }

    #[test]
    fn below_in_range() {
        let mut r = Lcg::new(7);
        for _ in 0..1000 {
            assert!(r.below(5) < 5);
            let x = r.range_i64(-3, 3);
            assert!((-3..=3).contains(&x));
        }
    }
}
