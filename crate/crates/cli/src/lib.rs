//! Experiment harness around the `catmodes` clustering core: seeded batches
//! of runs, accuracy aggregation, benchmark manifests and report writers.

pub mod config;
pub mod error;
pub mod experiment;
pub mod report;
pub mod suite;

pub use config::{DatasetSpec, ExperimentConfig, OutputFormat, DEFAULT_RUNS};
pub use error::HarnessError;
pub use experiment::{
    run_experiment, run_experiment_on, AccuracySummary, Aggregate, DatasetInfo, ExperimentReport,
    RunRecord, TOOLKIT_VERSION,
};
pub use report::{emit_report, emit_suite, percent, EXPERIMENT_TSV_HEADER};
pub use suite::{run_benchmark_suite, Manifest, MethodAverage, SuiteCell, SuiteReport};
