use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use catmodes::{InitMethod, Schema, DEFAULT_MAX_ITERS};
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

/// Runs per experiment for the randomized initializers.
pub const DEFAULT_RUNS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Tsv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tsv" => Ok(OutputFormat::Tsv),
            "json" => Ok(OutputFormat::Json),
            other => Err(HarnessError::Config(format!(
                "unknown format `{other}` (expected tsv or json)"
            ))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Tsv => "tsv",
            OutputFormat::Json => "json",
        })
    }
}

/// A data file plus the schema needed to read it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "DatasetEntry", into = "DatasetEntry")]
pub struct DatasetSpec {
    pub name: String,
    pub path: PathBuf,
    pub schema: Schema,
    /// Cluster count; defaults to the number of classes in the file.
    pub k: Option<usize>,
}

/// Flat on-disk form of [`DatasetSpec`], so manifests can reject unknown keys.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatasetEntry {
    name: String,
    path: PathBuf,
    #[serde(default = "default_delimiter")]
    delimiter: char,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    class_column: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    ignore_columns: Vec<usize>,
    #[serde(default = "default_missing")]
    missing: String,
    #[serde(default)]
    header: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
}

fn default_delimiter() -> char {
    Schema::default().delimiter
}

fn default_missing() -> String {
    Schema::default().missing
}

impl From<DatasetEntry> for DatasetSpec {
    fn from(e: DatasetEntry) -> Self {
        Self {
            name: e.name,
            path: e.path,
            schema: Schema {
                delimiter: e.delimiter,
                class_column: e.class_column,
                ignore_columns: e.ignore_columns,
                missing: e.missing,
                header: e.header,
            },
            k: e.k,
        }
    }
}

impl From<DatasetSpec> for DatasetEntry {
    fn from(d: DatasetSpec) -> Self {
        Self {
            name: d.name,
            path: d.path,
            delimiter: d.schema.delimiter,
            class_column: d.schema.class_column,
            ignore_columns: d.schema.ignore_columns,
            missing: d.schema.missing,
            header: d.schema.header,
            k: d.k,
        }
    }
}

impl DatasetSpec {
    pub fn new(path: impl Into<PathBuf>, schema: Schema) -> Self {
        let path = path.into();
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "dataset".into());
        Self {
            name,
            path,
            schema,
            k: None,
        }
    }

    /// Resolves a relative path against `base`.
    pub fn relative_to(mut self, base: &Path) -> Self {
        if self.path.is_relative() {
            self.path = base.join(&self.path);
        }
        self
    }
}

/// One experiment: a dataset, an initializer and a batch of seeded runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub dataset: DatasetSpec,
    pub method: InitMethod,
    /// Overrides `dataset.k` and the class-count default.
    pub k: Option<usize>,
    pub runs: usize,
    /// Run `r` is seeded with `base_seed + r`.
    pub base_seed: u64,
    pub max_iters: usize,
    pub format: OutputFormat,
    /// Execute runs on the rayon pool. Results are identical either way.
    #[serde(default = "yes")]
    pub parallel: bool,
}

fn yes() -> bool {
    true
}

impl ExperimentConfig {
    pub fn new(dataset: DatasetSpec, method: InitMethod) -> Self {
        Self {
            dataset,
            method,
            k: None,
            runs: DEFAULT_RUNS,
            base_seed: 0,
            max_iters: DEFAULT_MAX_ITERS,
            format: OutputFormat::Tsv,
            parallel: true,
        }
        .normalized()
    }

    /// A deterministic initializer needs exactly one run.
    pub fn normalized(mut self) -> Self {
        if !self.method.is_randomized() {
            self.runs = 1;
        }
        self
    }

    pub fn seed_for_run(&self, run: usize) -> u64 {
        self.base_seed.wrapping_add(run as u64)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.runs == 0 {
            return Err(HarnessError::Config("runs must be at least 1".into()));
        }
        if self.max_iters == 0 {
            return Err(HarnessError::Config("max_iters must be at least 1".into()));
        }
        if self.k == Some(0) || self.dataset.k == Some(0) {
            return Err(HarnessError::Config("k must be at least 1".into()));
        }
        Ok(())
    }
}
