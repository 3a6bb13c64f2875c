//! Seeded random streams.
//!
//! Every run owns exactly one [`RngStream`]. The stream for repetition `r` of
//! an experiment is derived from `(base_seed, r)` alone, so repetitions can
//! run in any order or concurrently and still reproduce bit-for-bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Stream for repetition `rep` of an experiment seeded with `base_seed`.
    pub fn for_run(base_seed: u64, rep: u64) -> Self {
        Self::new(derive_seed(base_seed, rep))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in the closed interval `[0, 1]`.
    pub fn unit_closed(&mut self) -> f64 {
        self.inner.random_range(0.0..=1.0)
    }

    /// Uniform draw in the half-open interval `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform draw in `[-1, 1]`.
    pub fn symmetric(&mut self) -> f64 {
        self.inner.random_range(-1.0..=1.0)
    }

    /// Uniform index in `0..n`. `n` must be non-zero.
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }
}

/// SplitMix64 finalizer; decorrelates neighbouring seeds.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of repetition `rep` under `base_seed`.
pub fn derive_seed(base_seed: u64, rep: u64) -> u64 {
    mix64(base_seed ^ mix64(rep.wrapping_add(1)))
}
