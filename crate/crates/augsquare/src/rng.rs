//! Seeded pseudo-random numbers with a fully specified algorithm.
//!
//! Entry placement and the interchange search must be reproducible
//! bit-for-bit from a seed, across builds and across independent
//! implementations, so the generator is pinned down here rather than
//! taken from an external crate whose stream might change.
//!
//! The generator is SplitMix64 (Steele, Lea & Flood's `splitmix64`):
//!
//! ```text
//! state += 0x9E3779B97F4A7C15                     (golden-ratio gamma)
//! z  = state
//! z  = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z  = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! out = z ^ (z >> 31)
//! ```
//!
//! Derived quantities are equally pinned: `below(n)` is `next_u64() % n`,
//! and [`shuffle`] is a Fisher–Yates pass from the last index down to 1
//! with `j = below(i + 1)`.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 generator. All randomness in the crate flows through this.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..n`. The modulo bias is below 2^-50 for every
    /// `n` used in this crate.
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }
}

/// Derives the seed for an independent sub-stream (e.g. one search restart).
///
/// The rule is one SplitMix64 output step applied to
/// `seed + index * GOLDEN_GAMMA`, so sub-streams can be created in any
/// order yet are a pure function of `(seed, index)`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    SplitMix64::new(seed.wrapping_add(index.wrapping_mul(GOLDEN_GAMMA))).next_u64()
}

/// Deterministic Fisher–Yates shuffle driven by the supplied generator.
pub fn shuffle<T>(items: &mut [T], rng: &mut SplitMix64) {
    for i in (1..items.len()).rev() {
        let j = rng.below(i + 1);
        items.swap(i, j);
    }
}
