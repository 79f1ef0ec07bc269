//! Seeded batches of k-modes runs.

use catmodes::{kmodes, load_dataset, Dataset, InitSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::HarnessError;

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub seed: u64,
    /// Fraction in `[0, 1]`; absent when the data has no class column.
    pub accuracy: Option<f64>,
    pub objective: usize,
    pub iterations: usize,
    pub converged: bool,
    /// The initializer had to reuse an attribute vector (fewer than k
    /// distinct rows).
    pub duplicate_centers: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracySummary {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// Population standard deviation over runs.
    pub stddev: f64,
}

impl AccuracySummary {
    /// Summary of `values` in the given order; `None` for an empty slice.
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        Some(Self {
            mean,
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            stddev: var.sqrt(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub runs: usize,
    pub accuracy: Option<AccuracySummary>,
    pub mean_objective: f64,
    pub mean_iterations: f64,
    pub converged_runs: usize,
    pub duplicate_center_runs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetInfo {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub distinct_rows: usize,
    /// Object count per class, in class-code order.
    pub class_distribution: Option<Vec<usize>>,
}

impl DatasetInfo {
    pub fn describe(name: &str, ds: &Dataset) -> Self {
        Self {
            name: name.to_string(),
            n: ds.n(),
            m: ds.m(),
            distinct_rows: ds.distinct_rows(),
            class_distribution: ds.labels().map(|l| l.distribution()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub toolkit_version: String,
    pub config: ExperimentConfig,
    /// The k actually used.
    pub k: usize,
    pub dataset: DatasetInfo,
    pub runs: Vec<RunRecord>,
    pub aggregate: Aggregate,
}

impl ExperimentReport {
    pub fn mean_accuracy(&self) -> Option<f64> {
        self.aggregate.accuracy.as_ref().map(|a| a.mean)
    }
}

/// Loads the configured dataset and runs the experiment on it.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, HarnessError> {
    cfg.validate()?;
    let ds = load_dataset(&cfg.dataset.path, &cfg.dataset.schema)?;
    run_experiment_on(&ds, cfg)
}

/// Picks k: explicit override, then the dataset spec, then the class count.
pub fn resolve_k(ds: &Dataset, cfg: &ExperimentConfig) -> Result<usize, HarnessError> {
    cfg.k
        .or(cfg.dataset.k)
        .or_else(|| ds.labels().map(|l| l.class_count()))
        .ok_or_else(|| {
            HarnessError::Config("k is required when the data has no class column".into())
        })
}

/// Runs the experiment on an already loaded dataset.
pub fn run_experiment_on(
    ds: &Dataset,
    cfg: &ExperimentConfig,
) -> Result<ExperimentReport, HarnessError> {
    let cfg = cfg.clone().normalized();
    cfg.validate()?;
    let k = resolve_k(ds, &cfg)?;
    if k > ds.n() {
        return Err(HarnessError::Config(format!(
            "k = {k} exceeds n = {}",
            ds.n()
        )));
    }

    let one = |run: usize| single_run(ds, &cfg, k, run);
    let runs: Vec<RunRecord> = if cfg.parallel {
        (0..cfg.runs)
            .into_par_iter()
            .map(one)
            .collect::<Result<_, _>>()?
    } else {
        (0..cfg.runs).map(one).collect::<Result<_, _>>()?
    };

    let aggregate = aggregate(&runs);
    Ok(ExperimentReport {
        toolkit_version: TOOLKIT_VERSION.to_string(),
        dataset: DatasetInfo::describe(&cfg.dataset.name, ds),
        config: cfg,
        k,
        runs,
        aggregate,
    })
}

fn single_run(
    ds: &Dataset,
    cfg: &ExperimentConfig,
    k: usize,
    run: usize,
) -> Result<RunRecord, HarnessError> {
    let seed = cfg.seed_for_run(run);
    let seeding = InitSpec::new(cfg.method, k, seed).select(ds)?;
    let result = kmodes(ds, &seeding.centers, cfg.max_iters)?;
    Ok(RunRecord {
        run,
        seed,
        accuracy: result.accuracy.map(|a| a.accuracy),
        objective: result.objective,
        iterations: result.iterations,
        converged: result.converged,
        duplicate_centers: seeding.has_duplicate_centers(),
    })
}

fn aggregate(runs: &[RunRecord]) -> Aggregate {
    let n = runs.len() as f64;
    let accuracies: Vec<f64> = runs.iter().filter_map(|r| r.accuracy).collect();
    Aggregate {
        runs: runs.len(),
        accuracy: if accuracies.len() == runs.len() {
            AccuracySummary::of(&accuracies)
        } else {
            None
        },
        mean_objective: runs.iter().map(|r| r.objective as f64).sum::<f64>() / n,
        mean_iterations: runs.iter().map(|r| r.iterations as f64).sum::<f64>() / n,
        converged_runs: runs.iter().filter(|r| r.converged).count(),
        duplicate_center_runs: runs.iter().filter(|r| r.duplicate_centers).count(),
    }
}
