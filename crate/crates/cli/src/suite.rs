//! Benchmark manifests and the dataset-by-method accuracy matrix.

use std::fs;
use std::path::Path;

use catmodes::{InitMethod, DEFAULT_MAX_ITERS};
use serde::{Deserialize, Serialize};

use crate::config::{DatasetSpec, ExperimentConfig, OutputFormat, DEFAULT_RUNS};
use crate::error::HarnessError;
use crate::experiment::{run_experiment, AccuracySummary, TOOLKIT_VERSION};

/// A TOML file listing datasets (with their schemas) and the protocol to run
/// on each. Relative data paths resolve against the manifest's directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    #[serde(default = "all_methods")]
    pub methods: Vec<InitMethod>,
    #[serde(rename = "dataset")]
    pub datasets: Vec<DatasetSpec>,
}

fn default_runs() -> usize {
    DEFAULT_RUNS
}

fn default_max_iters() -> usize {
    DEFAULT_MAX_ITERS
}

fn all_methods() -> Vec<InitMethod> {
    InitMethod::ALL.to_vec()
}

impl Manifest {
    pub fn parse(text: &str, base: &Path) -> Result<Self, HarnessError> {
        let mut manifest: Manifest = toml::from_str(text).map_err(|e| HarnessError::Manifest {
            path: base.to_path_buf(),
            message: e.to_string(),
        })?;
        manifest.datasets = manifest
            .datasets
            .into_iter()
            .map(|d| d.relative_to(base))
            .collect();
        Ok(manifest)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, HarnessError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| HarnessError::Manifest {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::parse(&text, path.parent().unwrap_or(Path::new("."))).map_err(|e| match e {
            HarnessError::Manifest { message, .. } => HarnessError::Manifest {
                path: path.to_path_buf(),
                message,
            },
            other => other,
        })
    }

    /// One config per (dataset, method), datasets outermost.
    pub fn configs(&self) -> Vec<ExperimentConfig> {
        let mut out = Vec::new();
        for d in &self.datasets {
            for &method in &self.methods {
                let mut cfg = ExperimentConfig::new(d.clone(), method);
                cfg.runs = self.runs;
                cfg.base_seed = self.base_seed;
                cfg.max_iters = self.max_iters;
                cfg.format = OutputFormat::Tsv;
                out.push(cfg.normalized());
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteCell {
    pub dataset: String,
    pub method: InitMethod,
    pub k: Option<usize>,
    pub runs: usize,
    pub base_seed: u64,
    pub max_iters: usize,
    pub mean_accuracy: Option<f64>,
    pub accuracy: Option<AccuracySummary>,
    pub mean_iterations: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodAverage {
    pub method: InitMethod,
    /// Mean of the method's cell means; `None` if no cell succeeded.
    pub mean_accuracy: Option<f64>,
    /// Cells that entered the average.
    pub datasets: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub toolkit_version: String,
    pub datasets: Vec<String>,
    pub methods: Vec<InitMethod>,
    pub cells: Vec<SuiteCell>,
    pub averages: Vec<MethodAverage>,
}

impl SuiteReport {
    pub fn cell(&self, dataset: &str, method: InitMethod) -> Option<&SuiteCell> {
        self.cells
            .iter()
            .find(|c| c.dataset == dataset && c.method == method)
    }

    pub fn average(&self, method: InitMethod) -> Option<f64> {
        self.averages
            .iter()
            .find(|a| a.method == method)
            .and_then(|a| a.mean_accuracy)
    }

    pub fn errors(&self) -> impl Iterator<Item = &SuiteCell> {
        self.cells.iter().filter(|c| c.error.is_some())
    }
}

/// Runs every config in order. A failing config becomes an error cell; the
/// rest of the suite still runs.
pub fn run_benchmark_suite(configs: &[ExperimentConfig]) -> SuiteReport {
    let mut datasets: Vec<String> = Vec::new();
    let mut methods: Vec<InitMethod> = Vec::new();
    let mut cells = Vec::with_capacity(configs.len());

    for cfg in configs {
        let cfg = cfg.clone().normalized();
        if !datasets.contains(&cfg.dataset.name) {
            datasets.push(cfg.dataset.name.clone());
        }
        if !methods.contains(&cfg.method) {
            methods.push(cfg.method);
        }
        let mut cell = SuiteCell {
            dataset: cfg.dataset.name.clone(),
            method: cfg.method,
            k: None,
            runs: cfg.runs,
            base_seed: cfg.base_seed,
            max_iters: cfg.max_iters,
            mean_accuracy: None,
            accuracy: None,
            mean_iterations: None,
            error: None,
        };
        match run_experiment(&cfg) {
            Ok(report) => {
                cell.k = Some(report.k);
                cell.mean_accuracy = report.mean_accuracy();
                cell.mean_iterations = Some(report.aggregate.mean_iterations);
                cell.accuracy = report.aggregate.accuracy;
            }
            Err(e) => cell.error = Some(e.to_string()),
        }
        cells.push(cell);
    }

    let averages = methods
        .iter()
        .map(|&method| {
            let values: Vec<f64> = cells
                .iter()
                .filter(|c| c.method == method && c.error.is_none())
                .filter_map(|c| c.mean_accuracy)
                .collect();
            MethodAverage {
                method,
                mean_accuracy: (!values.is_empty())
                    .then(|| values.iter().sum::<f64>() / values.len() as f64),
                datasets: values.len(),
            }
        })
        .collect();

    SuiteReport {
        toolkit_version: TOOLKIT_VERSION.to_string(),
        datasets,
        methods,
        cells,
        averages,
    }
}
