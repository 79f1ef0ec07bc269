use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use catmodes::{InitMethod, Schema, DEFAULT_MAX_ITERS};
use catmodes_cli::{
    emit_report, emit_suite, run_benchmark_suite, run_experiment, DatasetSpec, ExperimentConfig,
    Manifest, OutputFormat, DEFAULT_RUNS,
};
use clap::{Args, Parser, Subcommand};

/// k-modes clustering of categorical data with random, BFPH and NFPH seeding.
#[derive(Parser)]
#[command(name = "catmodes", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Run every dataset in a manifest with each method and print the
    /// dataset-by-method accuracy matrix.
    Bench(BenchArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Delimited data file, one object per line.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Zero-based class column, or `none`.
    #[arg(long, default_value = "none")]
    class_col: String,
    /// Comma-separated zero-based columns to drop (e.g. an identifier).
    #[arg(long, value_delimiter = ',')]
    ignore_cols: Vec<usize>,
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// Missing-value token; kept as an ordinary category.
    #[arg(long, default_value = "?")]
    missing: String,
    /// Skip a header line.
    #[arg(long)]
    header: bool,
    /// Cluster count; defaults to the number of classes.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "nfph")]
    init: InitMethod,
    /// Defaults to 100 for random and bfph; nfph always runs once.
    #[arg(long)]
    runs: Option<usize>,
    /// Run r uses seed + r.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
    max_iters: usize,
    #[arg(long, default_value = "tsv")]
    format: OutputFormat,
    /// Output file, or `stdout`.
    #[arg(long, default_value = "stdout")]
    out: String,
    /// Run sequentially instead of on the thread pool.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// TOML manifest listing datasets and their schemas.
    manifest: PathBuf,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_iters: Option<usize>,
    /// Comma-separated subset of random,bfph,nfph.
    #[arg(long, value_delimiter = ',')]
    methods: Vec<InitMethod>,
    #[arg(long, default_value = "tsv")]
    format: OutputFormat,
    #[arg(long, default_value = "stdout")]
    out: String,
}

fn open_sink(out: &str) -> Result<Box<dyn Write>> {
    Ok(if out == "stdout" || out == "-" {
        Box::new(BufWriter::new(io::stdout().lock()))
    } else {
        Box::new(BufWriter::new(
            File::create(out).with_context(|| format!("creating {out}"))?,
        ))
    })
}

fn parse_class_col(s: &str) -> Result<Option<usize>> {
    if s.eq_ignore_ascii_case("none") {
        return Ok(None);
    }
    s.parse()
        .map(Some)
        .with_context(|| format!("--class-col expects an index or `none`, got `{s}`"))
}

fn run(args: RunArgs) -> Result<()> {
    let Some(data) = args.data else {
        bail!("--data is required (or use the `bench` subcommand)");
    };
    let schema = Schema {
        delimiter: args.delimiter,
        class_column: parse_class_col(&args.class_col)?,
        ignore_columns: args.ignore_cols,
        missing: args.missing,
        header: args.header,
    };
    let mut cfg = ExperimentConfig::new(DatasetSpec::new(data, schema), args.init);
    cfg.k = args.k;
    cfg.runs = args.runs.unwrap_or(DEFAULT_RUNS);
    cfg.base_seed = args.seed;
    cfg.max_iters = args.max_iters;
    cfg.format = args.format;
    cfg.parallel = !args.sequential;
    let cfg = cfg.normalized();

    let report = run_experiment(&cfg)?;
    let mut sink = open_sink(&args.out)?;
    emit_report(&report, cfg.format, &mut sink)?;
    sink.flush()?;
    Ok(())
}

fn bench(args: BenchArgs) -> Result<bool> {
    let mut manifest = Manifest::load(&args.manifest)?;
    if let Some(r) = args.runs {
        manifest.runs = r;
    }
    if let Some(s) = args.seed {
        manifest.base_seed = s;
    }
    if let Some(m) = args.max_iters {
        manifest.max_iters = m;
    }
    if !args.methods.is_empty() {
        manifest.methods = args.methods;
    }
    let report = run_benchmark_suite(&manifest.configs());
    let mut sink = open_sink(&args.out)?;
    emit_suite(&report, args.format, &mut sink)?;
    sink.flush()?;
    let mut ok = true;
    for cell in report.errors() {
        ok = false;
        eprintln!(
            "error: {} / {}: {}",
            cell.dataset,
            cell.method,
            cell.error.as_deref().unwrap_or_default()
        );
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Some(Command::Bench(args)) => bench(args),
        None => run(cli.run).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
