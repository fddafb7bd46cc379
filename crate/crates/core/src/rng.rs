//! Seeded generators. Every randomized routine takes an explicit seed; trial
//! `t` of a run draws from its own ChaCha stream so trials can be evaluated in
//! any order and still reproduce.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for one trial of a seeded run.
pub fn trial(seed: u64, index: u64) -> ChaCha8Rng {
    let mut g = ChaCha8Rng::seed_from_u64(seed);
    g.set_stream(index);
    g
}
