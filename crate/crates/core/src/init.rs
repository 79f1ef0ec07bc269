//! Initial center selection.
//!
//! Three strategies are provided:
//!
//! * `random` draws k distinct rows uniformly.
//! * `bfph` draws one row uniformly and grows the rest with the farthest-point
//!   (max-min) rule.
//! * `nfph` starts the same chain from the row whose attribute values are the
//!   most frequent overall, so the result depends only on the data.
//!
//! Randomness comes from [`ChaCha8Rng`] seeded with [`SeedableRng::seed_from_u64`];
//! ChaCha output is specified independently of platform and word size, so a
//! seed names the same centers everywhere.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, FrequencyTable};
use crate::error::{Error, Result};
use crate::kmodes::{nearest, Center};
use crate::metric::mismatches;

/// Sum over attributes of the global frequency of the row's value.
pub type Score = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitMethod {
    Random,
    Bfph,
    Nfph,
}

impl InitMethod {
    pub const ALL: [InitMethod; 3] = [InitMethod::Random, InitMethod::Bfph, InitMethod::Nfph];

    /// Whether the method consumes the seed.
    pub fn is_randomized(self) -> bool {
        !matches!(self, InitMethod::Nfph)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            InitMethod::Random => "random",
            InitMethod::Bfph => "bfph",
            InitMethod::Nfph => "nfph",
        }
    }
}

impl fmt::Display for InitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InitMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "random" => Ok(InitMethod::Random),
            "bfph" => Ok(InitMethod::Bfph),
            "nfph" => Ok(InitMethod::Nfph),
            other => Err(Error::Config(format!(
                "unknown init method `{other}` (expected random, bfph or nfph)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitSpec {
    pub method: InitMethod,
    /// Ignored by `nfph`.
    pub seed: u64,
    pub k: usize,
}

impl InitSpec {
    pub fn new(method: InitMethod, k: usize, seed: u64) -> Self {
        Self { method, seed, k }
    }

    pub fn select(&self, ds: &Dataset) -> Result<Seeding> {
        match self.method {
            InitMethod::Random => init_random(ds, self.k, self.seed),
            InitMethod::Bfph => init_bfph(ds, self.k, self.seed),
            InitMethod::Nfph => init_nfph(ds, self.k),
        }
    }
}

/// Chosen rows, in selection order, and their copies as centers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seeding {
    pub rows: Vec<usize>,
    pub centers: Vec<Center>,
    /// For a farthest-point chain, the max-min distance at which each center
    /// after the first was picked. Empty for random sampling.
    pub separations: Vec<usize>,
    /// Point-to-center distance evaluations spent maintaining the chain.
    pub distance_updates: usize,
}

impl Seeding {
    fn from_rows(ds: &Dataset, rows: Vec<usize>) -> Self {
        Self {
            centers: rows.iter().map(|&i| Center::from_row(ds, i)).collect(),
            rows,
            separations: Vec::new(),
            distance_updates: 0,
        }
    }

    /// True when two selected rows carry identical attribute vectors, which
    /// can only happen when the data has fewer than k distinct rows.
    pub fn has_duplicate_centers(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        !self.centers.iter().all(|c| seen.insert(c))
    }
}

/// The generator behind every seeded choice in this module.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_k(ds: &Dataset, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    if k > ds.n() {
        return Err(Error::Config(format!("k = {k} exceeds n = {}", ds.n())));
    }
    Ok(())
}

/// k distinct rows sampled uniformly without replacement.
pub fn init_random(ds: &Dataset, k: usize, seed: u64) -> Result<Seeding> {
    check_k(ds, k)?;
    let mut rng = seeded_rng(seed);
    let rows = index::sample(&mut rng, ds.n(), k).into_vec();
    Ok(Seeding::from_rows(ds, rows))
}

/// Greedy max-min chain starting at row `first`.
///
/// Each step picks the not-yet-chosen row whose distance to its nearest
/// chosen center is largest, lowest row index on ties. Distances to the
/// chosen set are kept in a running minimum, so every step after the first
/// costs one pass of n distance evaluations.
pub fn farthest_point_chain(ds: &Dataset, first: usize, k: usize) -> Result<Seeding> {
    check_k(ds, k)?;
    if first >= ds.n() {
        return Err(Error::Config(format!(
            "first row {first} out of range for n = {}",
            ds.n()
        )));
    }

    let n = ds.n();
    let mut rows = Vec::with_capacity(k);
    let mut separations = Vec::with_capacity(k.saturating_sub(1));
    let mut chosen = vec![false; n];
    let mut min_dist = vec![usize::MAX; n];
    let mut updates = 0;

    rows.push(first);
    chosen[first] = true;

    while rows.len() < k {
        let newest = ds.row(*rows.last().expect("chain is never empty"));
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in ds.rows().enumerate() {
            let d = mismatches(row, newest);
            updates += 1;
            if d < min_dist[i] {
                min_dist[i] = d;
            }
            if !chosen[i] && best.is_none_or(|(_, b)| min_dist[i] > b) {
                best = Some((i, min_dist[i]));
            }
        }
        let (next, sep) = best.expect("k <= n leaves a candidate");
        chosen[next] = true;
        rows.push(next);
        separations.push(sep);
    }

    let mut seeding = Seeding::from_rows(ds, rows);
    seeding.separations = separations;
    seeding.distance_updates = updates;
    Ok(seeding)
}

/// Basic farthest-point heuristic: a seeded uniform first row, then the chain.
pub fn init_bfph(ds: &Dataset, k: usize, seed: u64) -> Result<Seeding> {
    check_k(ds, k)?;
    let first = seeded_rng(seed).gen_range(0..ds.n());
    farthest_point_chain(ds, first, k)
}

/// Frequency score of every row against a table built over the whole dataset.
pub fn point_scores(ds: &Dataset, freq: &FrequencyTable) -> Result<Vec<Score>> {
    if !freq.matches(ds) || freq.rows() != ds.n() {
        return Err(Error::Consistency(
            "frequency table was not built over this dataset".into(),
        ));
    }
    Ok(ds
        .rows()
        .map(|row| row.iter().enumerate().map(|(j, &c)| freq.count(j, c)).sum())
        .collect())
}

/// Row with the highest score; lowest index on ties.
pub fn highest_score_row(scores: &[Score]) -> Option<usize> {
    let mut best: Option<(usize, Score)> = None;
    for (i, &s) in scores.iter().enumerate() {
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((i, s));
        }
    }
    best.map(|(i, _)| i)
}

/// Deterministic farthest-point heuristic: the chain starts from the
/// highest-scoring row.
pub fn init_nfph(ds: &Dataset, k: usize) -> Result<Seeding> {
    check_k(ds, k)?;
    let freq = ds.global_frequency_table();
    let scores = point_scores(ds, &freq)?;
    let first = highest_score_row(&scores).expect("dataset is non-empty");
    farthest_point_chain(ds, first, k)
}

/// k-center radius: the largest distance from any object to its nearest center.
pub fn partition_radius(ds: &Dataset, centers: &[Center]) -> Result<usize> {
    if centers.is_empty() {
        return Err(Error::Config("at least one center is required".into()));
    }
    if let Some(c) = centers.iter().find(|c| c.len() != ds.m()) {
        return Err(Error::Dimension {
            expected: ds.m(),
            found: c.len(),
        });
    }
    Ok(ds.rows().map(|r| nearest(r, centers).1).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Code;

    fn ds(rows: &[Vec<Code>]) -> Dataset {
        Dataset::from_codes(rows, None).unwrap()
    }

    #[test]
    fn chain_prefers_farthest() {
        let d = ds(&[vec![0, 0], vec![0, 1], vec![2, 3]]);
        let s = farthest_point_chain(&d, 0, 2).unwrap();
        assert_eq!(s.rows, vec![0, 2]);
        assert_eq!(s.separations, vec![2]);
    }

    #[test]
    fn chain_of_one() {
        let d = ds(&[vec![0, 0], vec![0, 1]]);
        let s = farthest_point_chain(&d, 1, 1).unwrap();
        assert_eq!(s.rows, vec![1]);
        assert_eq!(s.distance_updates, 0);
    }

    #[test]
    fn chain_tie_goes_low() {
        let d = ds(&[vec![0, 0], vec![1, 1], vec![2, 2]]);
        assert_eq!(farthest_point_chain(&d, 0, 2).unwrap().rows, vec![0, 1]);
    }

    #[test]
    fn chain_skips_chosen_duplicates() {
        let d = ds(&[vec![0], vec![0], vec![0]]);
        let s = farthest_point_chain(&d, 1, 3).unwrap();
        assert_eq!(s.rows, vec![1, 0, 2]);
        assert!(s.has_duplicate_centers());
    }

    #[test]
    fn k_bounds() {
        let d = ds(&[vec![0], vec![1]]);
        for r in [
            init_random(&d, 3, 0),
            init_bfph(&d, 3, 0),
            init_nfph(&d, 3),
            farthest_point_chain(&d, 0, 3),
            init_nfph(&d, 0),
        ] {
            assert!(matches!(r, Err(Error::Config(_))));
        }
        assert!(farthest_point_chain(&d, 2, 1).is_err());
    }

    #[test]
    fn scores() {
        // one attribute a,a,a,b
        let d = ds(&[vec![0], vec![0], vec![0], vec![1]]);
        let f = d.global_frequency_table();
        assert_eq!(point_scores(&d, &f).unwrap(), vec![3, 3, 3, 1]);

        let d = ds(&[vec![1, 2], vec![1, 2], vec![1, 2]]);
        let f = d.global_frequency_table();
        assert_eq!(point_scores(&d, &f).unwrap(), vec![6, 6, 6]);

        // {[a,x],[a,y],[b,x]}
        let d = ds(&[vec![0, 0], vec![0, 1], vec![1, 0]]);
        let f = d.global_frequency_table();
        assert_eq!(point_scores(&d, &f).unwrap(), vec![4, 3, 3]);
    }

    #[test]
    fn scores_reject_foreign_table() {
        let d = ds(&[vec![0, 0], vec![0, 1], vec![1, 0]]);
        let other = ds(&[vec![0, 0]]).global_frequency_table();
        assert!(matches!(
            point_scores(&d, &other),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn nfph_examples() {
        let d = ds(&[vec![0, 0], vec![0, 1], vec![1, 0]]);
        let s = init_nfph(&d, 1).unwrap();
        assert_eq!(s.centers, vec![Center::new(vec![0, 0])]);
        assert_eq!(init_nfph(&d, 2).unwrap().rows, vec![0, 1]);

        let distinct = ds(&[vec![0, 0], vec![1, 1], vec![2, 2]]);
        assert_eq!(init_nfph(&distinct, 1).unwrap().rows, vec![0]);
    }

    #[test]
    fn radius_examples() {
        let d = ds(&[vec![0, 0], vec![0, 1], vec![2, 3]]);
        assert_eq!(partition_radius(&d, &[Center::new(vec![0, 0])]).unwrap(), 2);
        let all: Vec<Center> = (0..3).map(|i| Center::from_row(&d, i)).collect();
        assert_eq!(partition_radius(&d, &all).unwrap(), 0);
        assert!(partition_radius(&d, &[]).is_err());
    }

    #[test]
    fn random_is_seeded() {
        let rows: Vec<Vec<Code>> = (0..100).map(|i| vec![i]).collect();
        let d = ds(&rows);
        for seed in 0..1000 {
            let s = init_random(&d, 3, seed).unwrap();
            assert_eq!(s, init_random(&d, 3, seed).unwrap());
            let mut r = s.rows.clone();
            r.sort_unstable();
            r.dedup();
            assert_eq!(r.len(), 3);
            assert!(r.iter().all(|&i| i < 100));
        }
        let mut all = init_random(&d, 100, 9).unwrap().rows;
        all.sort_unstable();
        assert_eq!(all, (0..100).collect::<Vec<_>>());
    }

    #[test]
    fn bfph_is_chain_from_drawn_row() {
        let d = ds(&[vec![0, 0], vec![0, 1], vec![2, 3], vec![1, 1], vec![2, 2]]);
        for seed in 0..50 {
            let s = init_bfph(&d, 3, seed).unwrap();
            assert_eq!(s, init_bfph(&d, 3, seed).unwrap());
            let first = seeded_rng(seed).gen_range(0..d.n());
            assert_eq!(s, farthest_point_chain(&d, first, 3).unwrap());
        }
        let mut all = init_bfph(&d, 5, 1).unwrap().rows;
        all.sort_unstable();
        assert_eq!(all, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn method_parsing() {
        assert_eq!("NFPH".parse::<InitMethod>().unwrap(), InitMethod::Nfph);
        assert!("kmeans++".parse::<InitMethod>().is_err());
        assert_eq!(InitMethod::Bfph.to_string(), "bfph");
    }
}
