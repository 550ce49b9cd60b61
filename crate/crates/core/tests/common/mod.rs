#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rebit_core::{random_product_state, random_pure_state, random_state, DensityOperator};

/// 1000 mixed states, 250 of each rank.
pub fn random_corpus() -> Vec<DensityOperator> {
    (0..1000u64)
        .map(|seed| random_state(seed, 1 + (seed % 4) as usize).unwrap())
        .collect()
}

/// Random corpus plus pure states, product states, and product mixtures.
pub fn full_corpus() -> Vec<DensityOperator> {
    let mut all = random_corpus();
    all.extend((0..200).map(|s| DensityOperator::pure(&random_pure_state(10_000 + s))));
    all.extend((0..200).map(|s| random_product_state(20_000 + s)));
    all.extend((0..200).map(|s| product_mixture(30_000 + s)));
    all
}

/// Convex combination of between 1 and 8 random real product states.
pub fn product_mixture(seed: u64) -> DensityOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.random_range(1..=8);
    let weights: Vec<f64> = (0..count).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let parts: Vec<(f64, DensityOperator)> = weights
        .iter()
        .enumerate()
        .map(|(k, w)| (w / total, random_product_state(seed * 16 + k as u64)))
        .collect();
    DensityOperator::mixture(&parts).unwrap()
}
