//! Seeded random source shared by the optimizer and the data generator.
//!
//! The stream is ChaCha8 (`rand_chacha`, value-stable across releases)
//! seeded through `seed_from_u64`. A unit draw takes the top 53 bits of one
//! `next_u64` and scales by 2^-53, giving a value in `[0, 1)`; every uniform
//! draw consumes exactly one `u64`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct StreamRng(ChaCha8Rng);

impl StreamRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.0.next_u64() >> 11) as f64 * SCALE
    }

    /// Uniform in `[low, high)`.
    pub fn uniform(&mut self, low: f64, high: f64) -> f64 {
        low + (high - low) * self.unit()
    }
}
