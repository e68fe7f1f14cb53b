//! Shared fixtures for the criterion benchmarks: deterministic planted
//! instances at the benchmark sizes and seeded rngs.

use peelcolor_core::gen::{generate_planted, PlantedInstance};
use peelcolor_core::rand_chacha::rand_core::SeedableRng;
use peelcolor_core::rand_chacha::ChaCha8Rng;

/// One planted instance at the standard density, fixed seed per size.
pub fn planted(n: usize) -> PlantedInstance {
    generate_planted(n, 3, 4.5, 0x5EED ^ n as u64).expect("benchmark fixture parameters are valid")
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
