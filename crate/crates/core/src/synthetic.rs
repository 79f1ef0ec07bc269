//! Seeded generators for categorical test data.

use rand::Rng;

use crate::dataset::{Code, Dataset};
use crate::init::seeded_rng;

/// Rows drawn uniformly from `values` categories per attribute, no labels.
pub fn uniform(n: usize, m: usize, values: u32, seed: u64) -> Dataset {
    let mut rng = seeded_rng(seed);
    let rows: Vec<Vec<Code>> = (0..n)
        .map(|_| (0..m).map(|_| rng.gen_range(0..values)).collect())
        .collect();
    Dataset::from_codes(&rows, None).expect("n, m >= 1")
}

/// `k` planted classes: each class has a prototype and every attribute of a
/// member is replaced by a uniform value with probability `noise`. Labels
/// record the planted class.
pub fn planted(n: usize, m: usize, k: usize, values: u32, noise: f64, seed: u64) -> Dataset {
    let mut rng = seeded_rng(seed);
    let prototypes: Vec<Vec<Code>> = (0..k)
        .map(|_| (0..m).map(|_| rng.gen_range(0..values)).collect())
        .collect();
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let class = i % k;
        let row = prototypes[class]
            .iter()
            .map(|&v| {
                if rng.gen_bool(noise) {
                    rng.gen_range(0..values)
                } else {
                    v
                }
            })
            .collect();
        rows.push(row);
        labels.push(class as Code);
    }
    Dataset::from_codes(&rows, Some(labels)).expect("n, m >= 1")
}
