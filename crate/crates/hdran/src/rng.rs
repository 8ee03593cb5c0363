//! Fixed, portable pseudo-random number generation.
//!
//! Reproducibility across platforms and releases is part of the public
//! contract of this crate, so the generator is pinned here rather than
//! delegated to an external crate whose stream might change:
//!
//! * Seeding: the 64-bit seed is expanded into 256 bits of state with the
//!   SplitMix64 sequence (Steele, Lea, Flood 2014).
//! * Stream: xoshiro256** (Blackman, Vigna 2018).
//! * Bounded integers: rejection sampling on the low bits, so every value
//!   in `0..bound` is exactly equally likely.
//!
//! None of these algorithms may be changed without bumping the network
//! file schema version, since serialized networks are a pure function of
//! `(k, n, seed)`.

/// SplitMix64 stepper, used for state expansion and seed derivation.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// xoshiro256** generator with SplitMix64 seeding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Xoshiro256StarStar {
    s: [u64; 4],
}

impl Xoshiro256StarStar {
    pub fn seed_from_u64(seed: u64) -> Self {
        let mut sm = SplitMix64::new(seed);
        let s = [sm.next_u64(), sm.next_u64(), sm.next_u64(), sm.next_u64()];
        Self { s }
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform integer in `0..bound` by rejection, unbiased for every bound.
    ///
    /// Panics if `bound` is zero.
    pub fn next_bounded(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        // Reject the partial block at the top of the u64 range.
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % bound;
            }
        }
    }

    /// Uniform f64 in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal draw via the Box-Muller transform.
    ///
    /// Used by calibration experiments; one value per call, the cosine
    /// branch only, so the stream stays easy to reason about.
    pub fn next_gaussian(&mut self) -> f64 {
        // u1 in (0, 1]: avoids ln(0).
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

/// Stateless derivation of the seed for replicate `index` of a run keyed by
/// `master_seed`.
///
/// `seed_i = SplitMix64(master_seed XOR (i + 1) * 0x9E3779B97F4A7C15).next()`,
/// so any replicate can be reproduced in isolation without replaying the
/// ones before it.
pub fn replicate_seed(master_seed: u64, index: u64) -> u64 {
    let salt = (index.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    SplitMix64::new(master_seed ^ salt).next_u64()
}
