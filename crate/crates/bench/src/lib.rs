//! Shared inputs for the criterion benchmarks.

use crlab_core::constructions::{rank_one_max_space, v_k, RankOneVariant};
use crlab_core::exact_linalg::mat::{random_integer_matrix, random_invertible};
use crlab_core::{rng, Mat, MatrixSubspace};

/// Dense integer matrix with entries in `[-bound, bound]`.
pub fn dense(n: usize, bound: u64, seed: u64) -> Mat {
    random_integer_matrix(&mut rng::seeded(seed), n, n, bound)
}

/// `v_k(n, k, l)` with the middle split, conjugated by a seeded invertible.
pub fn conjugated_vk(n: usize, k: usize, seed: u64) -> MatrixSubspace {
    let q = random_invertible(&mut rng::seeded(seed), n, 4);
    v_k(n, k, (n - k) / 2).unwrap().conjugate(&q).unwrap()
}

/// Conjugated generic rank-one maximal space.
pub fn conjugated_rank_one(n: usize, seed: u64) -> MatrixSubspace {
    let q = random_invertible(&mut rng::seeded(seed), n, 4);
    rank_one_max_space(n, RankOneVariant::Generic((n - 1) / 2))
        .unwrap()
        .conjugate(&q)
        .unwrap()
}
