//! Seeded generators for random relations used by property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::relcalc::BoolRel;

/// Random labels in `[0, k)` for `n` elements, with every label used. Needs `k <= n`.
fn surjective_labels(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut labels: Vec<usize> = (0..k).chain((k..n).map(|_| rng.random_range(0..k))).collect();
    labels.shuffle(rng);
    labels
}

/// A random uniform relation: random partitions of both sides with the same
/// number of classes, matched up by a random bijection.
pub fn random_uniform(rows: usize, cols: usize, seed: u64) -> BoolRel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.random_range(1..=rows.min(cols));
    let left = surjective_labels(&mut rng, rows, k);
    let right = surjective_labels(&mut rng, cols, k);
    BoolRel::from_pairs(
        rows,
        cols,
        (0..rows).flat_map(|a| {
            let right = &right;
            let la = left[a];
            (0..cols).filter(move |&b| right[b] == la).map(move |b| (a, b))
        }),
    )
}

/// The graph of a random total function.
pub fn random_function(rows: usize, cols: usize, seed: u64) -> BoolRel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f: Vec<usize> = (0..rows).map(|_| rng.random_range(0..cols)).collect();
    BoolRel::from_function(cols, &f)
}
