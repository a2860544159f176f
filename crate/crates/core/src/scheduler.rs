//! Uniformly random scheduler.
//!
//! Backed by `ChaCha8Rng` from `rand_chacha` 0.3, seeded with
//! `seed_from_u64`. Indices are drawn with `rand` 0.8's `Uniform`.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Yields one arc index per step, uniform in `[0, n)`.
#[derive(Debug, Clone)]
pub struct SchedulerStream {
    seed: u64,
    rng: ChaCha8Rng,
    range: Uniform<usize>,
}

impl SchedulerStream {
    /// # Panics
    /// If `n == 0`.
    pub fn new(n: usize, seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            range: Uniform::new(0, n),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn next_index(&mut self) -> usize {
        self.range.sample(&mut self.rng)
    }
}

impl Iterator for SchedulerStream {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        Some(self.next_index())
    }
}

/// Mixes a base seed with per-trial coordinates into an independent seed.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut h = splitmix64(base);
    for &p in parts {
        h = splitmix64(h ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    }
    h
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}
