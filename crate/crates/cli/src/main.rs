//! `dpca` command line: benchmark sweeps and dataset export.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dpca_core::bench::{emit_report, run_bench, BenchConfig, DataSource, ReportFormat, SplitKind};
use dpca_core::dataset::{load_path, parse_synth_spec, write_csv};
use dpca_core::{synth_faces, Method, Rule};

#[derive(Parser)]
#[command(
    name = "dpca",
    version,
    about = "Discriminative PCA, PCA and Direct LDA face recognition benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Accuracy and mean running time per method and training count.
    Bench(BenchArgs),
    /// Write a dataset (image tree or synthetic spec) as interchange CSV.
    Export(ExportArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Image tree (one subdirectory per class) or interchange CSV file.
    #[arg(long)]
    data: Option<PathBuf>,
    /// key=value synthetic dataset spec file.
    #[arg(long)]
    synth: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_delimiter = ',', default_value = "pca,dlda,dpca")]
    methods: Vec<Method>,
    /// Training images per class.
    #[arg(long = "l", value_delimiter = ',', default_value = "3,5,7")]
    l_values: Vec<usize>,
    /// Components for pca and dpca (capped at the numerical rank).
    #[arg(long, default_value_t = 40)]
    p: usize,
    /// Direct LDA directions, 0 for all remaining.
    #[arg(long, default_value_t = 0)]
    m: usize,
    #[arg(long = "discard-w", default_value_t = 0)]
    discard_w: usize,
    #[arg(long, default_value_t = Rule::Mean)]
    rule: Rule,
    #[arg(long, default_value_t = 20)]
    repeats: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = SplitArg::First)]
    split: SplitArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SplitArg {
    First,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    #[value(alias = "md")]
    Markdown,
}

fn read_spec(path: &Path) -> Result<dpca_core::SynthSpec, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("config stage failed: {}: {e}", path.display()))?;
    parse_synth_spec(&text).map_err(|e| format!("config stage failed: {}: {e}", path.display()))
}

fn source(s: &Source) -> Result<DataSource, String> {
    match (&s.data, &s.synth) {
        (Some(p), _) => Ok(DataSource::Path(p.clone())),
        (_, Some(p)) => read_spec(p).map(DataSource::Synth),
        _ => unreachable!("clap requires one source"),
    }
}

fn write_out(out: Option<&Path>, bytes: &[u8]) -> Result<(), String> {
    match out {
        Some(p) => {
            fs::write(p, bytes).map_err(|e| format!("output stage failed: {}: {e}", p.display()))
        }
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| format!("output stage failed: {e}")),
    }
}

fn bench(a: &BenchArgs) -> Result<(), String> {
    let mut cfg = BenchConfig::new(source(&a.source)?);
    cfg.methods = a.methods.clone();
    cfg.l_values = a.l_values.clone();
    cfg.p = a.p;
    cfg.m = (a.m > 0).then_some(a.m);
    cfg.discarded_w = a.discard_w;
    cfg.rule = a.rule;
    cfg.repeats = a.repeats;
    cfg.seed = a.seed;
    cfg.split = match a.split {
        SplitArg::First => SplitKind::First,
        SplitArg::Random => SplitKind::Random,
    };
    let report = run_bench(&cfg).map_err(|e| e.to_string())?;
    let fmt = match a.format {
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Markdown => ReportFormat::Markdown,
    };
    write_out(a.out.as_deref(), &emit_report(&report, fmt))
}

fn export(a: &ExportArgs) -> Result<(), String> {
    let data = match source(&a.source)? {
        DataSource::Path(p) => load_path(&p),
        DataSource::Synth(spec) => synth_faces(&spec),
        DataSource::Dataset(d) => Ok(d),
    }
    .map_err(|e| format!("dataset stage failed: {e}"))?;
    let mut bytes = Vec::new();
    write_csv(&data, &mut bytes).map_err(|e| format!("output stage failed: {e}"))?;
    write_out(a.out.as_deref(), &bytes)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Bench(a) => bench(a),
        Command::Export(a) => export(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("dpca: {msg}");
            ExitCode::FAILURE
        }
    }
}
