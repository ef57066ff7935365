//! The one seedable generator used across the crate.
//!
//! Everything randomized (oracle instances, random unitaries, randomized
//! tests) goes through [`seeded_rng`] so a logged 64-bit seed reproduces a
//! run exactly, independent of platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator for the given seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
