//! Fixed workloads shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use supertriple::fixtures::{l2, l2_current, s11};
use supertriple::random::random_valid_systems;
use supertriple::TripleSystem;

/// The bundled systems the benchmarks run on, smallest first.
pub fn named_systems() -> Vec<TripleSystem> {
    vec![l2(), s11(), l2_current()]
}

/// Reproducible random valid systems of dimension `2..=max_dim`.
pub fn random_systems(seed: u64, count: usize, max_dim: usize) -> Vec<TripleSystem> {
    random_valid_systems(&mut ChaCha8Rng::seed_from_u64(seed), count, max_dim)
}
