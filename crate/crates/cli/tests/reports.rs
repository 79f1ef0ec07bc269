use std::io::Write;
use std::path::Path;

use catmodes::{synthetic, Dataset, InitMethod, Schema};
use catmodes_cli::{
    emit_report, emit_suite, run_benchmark_suite, run_experiment_on, DatasetSpec, ExperimentConfig,
    ExperimentReport, OutputFormat, SuiteReport, EXPERIMENT_TSV_HEADER,
};
use tempfile::TempDir;

fn config(method: InitMethod, runs: usize, seed: u64) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(DatasetSpec::new("mem", Schema::default()), method);
    c.runs = runs;
    c.base_seed = seed;
    c.normalized()
}

fn render(report: &ExperimentReport, format: OutputFormat) -> String {
    let mut out = Vec::new();
    emit_report(report, format, &mut out).unwrap();
    String::from_utf8(out).unwrap()
}

fn render_suite(report: &SuiteReport, format: OutputFormat) -> String {
    let mut out = Vec::new();
    emit_suite(report, format, &mut out).unwrap();
    String::from_utf8(out).unwrap()
}

/// Writes `ds` (labels last) as CSV and returns its spec.
fn write_dataset(dir: &Path, name: &str, ds: &Dataset) -> DatasetSpec {
    let path = dir.join(format!("{name}.data"));
    let mut f = std::fs::File::create(&path).unwrap();
    let labels = ds.labels().unwrap().codes();
    for (row, label) in ds.rows().zip(labels) {
        let row: Vec<String> = row.iter().map(|c| format!("v{c}")).collect();
        writeln!(f, "{},c{label}", row.join(",")).unwrap();
    }
    let schema = Schema {
        class_column: Some(ds.m()),
        ..Schema::default()
    };
    let mut spec = DatasetSpec::new(path, schema);
    spec.name = name.to_string();
    spec
}

#[test]
fn single_run_tsv_has_three_lines() {
    let ds = synthetic::planted(50, 5, 3, 4, 0.2, 3);
    for method in InitMethod::ALL {
        let r = run_experiment_on(&ds, &config(method, 1, 0)).unwrap();
        let tsv = render(&r, OutputFormat::Tsv);
        assert_eq!(tsv.lines().count(), 3, "{tsv}");
        assert!(tsv
            .lines()
            .all(|l| l.split('\t').count() == EXPERIMENT_TSV_HEADER.split('\t').count()));
    }
}

#[test]
fn json_round_trips() {
    let ds = synthetic::planted(70, 6, 4, 3, 0.3, 9);
    for method in InitMethod::ALL {
        let r = run_experiment_on(&ds, &config(method, 25, 17)).unwrap();
        let back: ExperimentReport = serde_json::from_str(&render(&r, OutputFormat::Json)).unwrap();
        assert_eq!(back, r);
    }
}

#[test]
fn tsv_mean_matches_reaveraged_runs() {
    let ds = synthetic::planted(90, 8, 3, 3, 0.35, 21);
    let r = run_experiment_on(&ds, &config(InitMethod::Random, 37, 5)).unwrap();
    let tsv = render(&r, OutputFormat::Tsv);
    let lines: Vec<Vec<&str>> = tsv
        .lines()
        .skip(1)
        .map(|l| l.split('\t').collect())
        .collect();
    let (mean_line, run_lines) = lines.split_last().unwrap();
    assert_eq!(run_lines.len(), 37);
    assert_eq!(mean_line[0], "mean");

    let per_run: Vec<f64> = run_lines.iter().map(|l| l[2].parse().unwrap()).collect();
    for (rec, v) in r.runs.iter().zip(&per_run) {
        assert_eq!(rec.accuracy, Some(*v));
    }
    let recomputed = per_run.iter().sum::<f64>() / per_run.len() as f64;
    let emitted: f64 = mean_line[2].parse().unwrap();
    assert_eq!(emitted, recomputed);
    assert_eq!(Some(emitted), r.mean_accuracy());
    assert_eq!(mean_line[3], format!("{:.2}", recomputed * 100.0));
}

#[test]
fn unlabeled_accuracy_is_na() {
    let ds = synthetic::uniform(20, 3, 3, 1);
    let mut c = config(InitMethod::Bfph, 2, 0);
    c.k = Some(2);
    let tsv = render(&run_experiment_on(&ds, &c).unwrap(), OutputFormat::Tsv);
    assert!(tsv
        .lines()
        .skip(1)
        .all(|l| l.split('\t').nth(2) == Some("NA")));
}

#[test]
fn identical_config_gives_identical_bytes() {
    let ds = synthetic::planted(60, 7, 3, 4, 0.25, 2);
    for method in InitMethod::ALL {
        let c = config(method, 30, 99);
        let a = run_experiment_on(&ds, &c).unwrap();
        let b = run_experiment_on(&ds, &c).unwrap();
        for format in [OutputFormat::Tsv, OutputFormat::Json] {
            assert_eq!(render(&a, format), render(&b, format));
        }
    }
}

#[test]
fn suite_average_row_is_column_mean() {
    let dir = TempDir::new().unwrap();
    let specs: Vec<DatasetSpec> = (0..4)
        .map(|i| {
            let ds = synthetic::planted(40 + 10 * i, 6, 2 + i, 3, 0.3, i as u64);
            write_dataset(dir.path(), &format!("d{i}"), &ds)
        })
        .collect();
    let configs: Vec<ExperimentConfig> = specs
        .iter()
        .flat_map(|s| {
            InitMethod::ALL.into_iter().map(move |m| {
                let mut c = ExperimentConfig::new(s.clone(), m);
                c.runs = 10;
                c.normalized()
            })
        })
        .collect();
    let report = run_benchmark_suite(&configs);
    assert_eq!(report.cells.len(), 12);
    assert_eq!(report.errors().count(), 0);

    let tsv = render_suite(&report, OutputFormat::Tsv);
    let rows: Vec<Vec<&str>> = tsv.lines().map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0], vec!["dataset", "random", "bfph", "nfph"]);
    assert_eq!(rows[5][0], "Avg.");

    for (col, &method) in InitMethod::ALL.iter().enumerate() {
        let cells: Vec<f64> = report
            .datasets
            .iter()
            .map(|d| report.cell(d, method).unwrap().mean_accuracy.unwrap())
            .collect();
        assert_eq!(cells.len(), 4);
        let mean = cells.iter().sum::<f64>() / 4.0;
        assert_eq!(report.average(method), Some(mean));
        assert_eq!(rows[5][col + 1], format!("{:.2}", mean * 100.0));
    }

    let back: SuiteReport =
        serde_json::from_str(&render_suite(&report, OutputFormat::Json)).unwrap();
    assert_eq!(back, report);
}

#[test]
fn single_config_is_one_cell() {
    let dir = TempDir::new().unwrap();
    let ds = synthetic::planted(30, 4, 2, 3, 0.1, 4);
    let spec = write_dataset(dir.path(), "only", &ds);
    let report = run_benchmark_suite(&[ExperimentConfig::new(spec, InitMethod::Nfph)]);
    assert_eq!(report.cells.len(), 1);
    let tsv = render_suite(&report, OutputFormat::Tsv);
    assert_eq!(tsv.lines().count(), 3);
    assert_eq!(
        report.average(InitMethod::Nfph),
        report.cells[0].mean_accuracy
    );
}

#[test]
fn failed_config_leaves_partial_report() {
    let dir = TempDir::new().unwrap();
    let ds = synthetic::planted(30, 4, 2, 3, 0.1, 4);
    let good = write_dataset(dir.path(), "good", &ds);
    let bad = DatasetSpec::new(dir.path().join("missing.data"), Schema::default());
    let report = run_benchmark_suite(&[
        ExperimentConfig::new(good, InitMethod::Nfph),
        ExperimentConfig::new(bad, InitMethod::Nfph),
    ]);
    assert_eq!(report.errors().count(), 1);
    assert!(report
        .cell("good", InitMethod::Nfph)
        .unwrap()
        .error
        .is_none());
    assert!(render_suite(&report, OutputFormat::Tsv).contains("missing\tERR"));
    assert_eq!(
        report.average(InitMethod::Nfph),
        report.cells[0].mean_accuracy
    );
}

#[test]
fn nfph_row_ignores_base_seed() {
    let dir = TempDir::new().unwrap();
    let specs: Vec<DatasetSpec> = (0..3)
        .map(|i| {
            let ds = synthetic::planted(50, 5, 3, 4, 0.3, 10 + i);
            write_dataset(dir.path(), &format!("s{i}"), &ds)
        })
        .collect();
    let nfph_cells = |seed: u64| {
        let configs: Vec<ExperimentConfig> = specs
            .iter()
            .map(|s| {
                let mut c = ExperimentConfig::new(s.clone(), InitMethod::Nfph);
                c.base_seed = seed;
                c
            })
            .collect();
        run_benchmark_suite(&configs)
            .cells
            .into_iter()
            .map(|c| c.mean_accuracy)
            .collect::<Vec<_>>()
    };
    let reference = nfph_cells(0);
    for seed in [1, 42, u64::MAX] {
        assert_eq!(nfph_cells(seed), reference);
    }
}
