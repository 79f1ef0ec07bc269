//! TSV and JSON rendering of experiment and suite reports.
//!
//! Fractions are printed with Rust's shortest round-trip float formatting, so
//! re-parsing any number yields the in-memory value. Percent columns are
//! rounded to two decimals for reading only.

use std::io::Write;

use crate::config::OutputFormat;
use crate::error::HarnessError;
use crate::experiment::ExperimentReport;
use crate::suite::SuiteReport;

pub const EXPERIMENT_TSV_HEADER: &str = "run\tseed\taccuracy\taccuracy_pct\tobjective\titerations\tconverged\tduplicate_centers\taccuracy_min\taccuracy_max\taccuracy_stddev";

/// Percent with two decimals.
pub fn percent(fraction: f64) -> String {
    format!("{:.2}", fraction * 100.0)
}

fn opt_fraction(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |a| a.to_string())
}

fn opt_percent(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), percent)
}

/// Writes `report` as TSV (header, one line per run, one `mean` line) or as
/// a single JSON object.
pub fn emit_report(
    report: &ExperimentReport,
    format: OutputFormat,
    sink: &mut dyn Write,
) -> Result<(), HarnessError> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *sink, report)?;
            writeln!(sink)?;
        }
        OutputFormat::Tsv => {
            writeln!(sink, "{EXPERIMENT_TSV_HEADER}")?;
            for r in &report.runs {
                writeln!(
                    sink,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t-\t-\t-",
                    r.run,
                    r.seed,
                    opt_fraction(r.accuracy),
                    opt_percent(r.accuracy),
                    r.objective,
                    r.iterations,
                    r.converged,
                    r.duplicate_centers,
                )?;
            }
            let a = &report.aggregate;
            let acc = a.accuracy.as_ref();
            writeln!(
                sink,
                "mean\t-\t{}\t{}\t{}\t{}\t{}/{}\t{}\t{}\t{}\t{}",
                opt_fraction(acc.map(|s| s.mean)),
                opt_percent(acc.map(|s| s.mean)),
                a.mean_objective,
                a.mean_iterations,
                a.converged_runs,
                a.runs,
                a.duplicate_center_runs,
                opt_fraction(acc.map(|s| s.min)),
                opt_fraction(acc.map(|s| s.max)),
                opt_fraction(acc.map(|s| s.stddev)),
            )?;
        }
    }
    Ok(())
}

/// Writes the dataset-by-method matrix of mean accuracies (percent) with a
/// closing `Avg.` row, or the full suite as JSON.
pub fn emit_suite(
    report: &SuiteReport,
    format: OutputFormat,
    sink: &mut dyn Write,
) -> Result<(), HarnessError> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *sink, report)?;
            writeln!(sink)?;
        }
        OutputFormat::Tsv => {
            let methods: Vec<&str> = report.methods.iter().map(|m| m.as_str()).collect();
            writeln!(sink, "dataset\t{}", methods.join("\t"))?;
            for dataset in &report.datasets {
                let cells: Vec<String> = report
                    .methods
                    .iter()
                    .map(|&m| match report.cell(dataset, m) {
                        Some(c) if c.error.is_some() => "ERR".to_string(),
                        Some(c) => opt_percent(c.mean_accuracy),
                        None => "-".to_string(),
                    })
                    .collect();
                writeln!(sink, "{dataset}\t{}", cells.join("\t"))?;
            }
            let avgs: Vec<String> = report
                .methods
                .iter()
                .map(|&m| opt_percent(report.average(m)))
                .collect();
            writeln!(sink, "Avg.\t{}", avgs.join("\t"))?;
        }
    }
    Ok(())
}
