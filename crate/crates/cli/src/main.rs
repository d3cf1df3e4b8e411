// SPDX-License-Identifier: Apache-2.0

//! Command-line front end for the QDSFM solvers.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdsfm::{Backend, Method};

#[derive(Parser)]
#[command(name = "qdsfm", version, about = "Quadratic decomposable submodular function minimization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and write the solution and trace.
    Solve(SolveArgs),
    /// Project onto the cone of a single function from an instance.
    Project(ProjectArgs),
    /// Hypergraph PageRank with an optional sweep cut.
    Pagerank(PagerankArgs),
    /// Semi-supervised two-class demo with the Cheeger cut rule.
    SslDemo(SslArgs),
    /// Emit a seeded synthetic instance or hypergraph.
    Gen(GenArgs),
    /// Run every method/backend pair and write one trace per pair.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Rcd,
    Ap,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Rcd => Method::Rcd,
            MethodArg::Ap => Method::Ap,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Exact,
    Mnp,
    Fw,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Mnp => Backend::Mnp,
            BackendArg::Fw => Backend::Fw,
        }
    }
}

#[derive(Args, Clone)]
struct SolverArgs {
    /// Stop once the duality gap falls to this value.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long = "max-iters", default_value_t = 1_000_000)]
    max_iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record the trace every this many iterations (default: R for RCD, 1 for AP).
    #[arg(long = "trace-every")]
    trace_every: Option<usize>,
    /// Run AP projections on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "rcd")]
    method: MethodArg,
    /// Projection routine; defaults to exact for cut functions and MNP otherwise.
    #[arg(long, value_enum)]
    backend: Option<BackendArg>,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    solution: Option<PathBuf>,
}

#[derive(Args)]
struct ProjectArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Index of the function to project onto.
    #[arg(long, default_value_t = 0)]
    atom: usize,
    #[arg(long, value_enum, default_value = "mnp")]
    backend: BackendArg,
    /// Point to project, one value per member (default: the instance target on the members).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    point: Option<Vec<f64>>,
    /// Metric weights, one per member (default: the instance weights on the members).
    #[arg(long, value_delimiter = ',')]
    metric: Option<Vec<f64>>,
    #[arg(long, default_value_t = qdsfm::projection::DEFAULT_DELTA)]
    delta: f64,
}

#[derive(Args)]
struct PagerankArgs {
    #[arg(long)]
    hypergraph: PathBuf,
    #[arg(long, default_value_t = 0.15)]
    alpha: f64,
    /// Seed vertex for a one-hot starting distribution.
    #[arg(long, conflicts_with = "p0", required_unless_present = "p0")]
    source: Option<usize>,
    /// Starting distribution, one value per line.
    #[arg(long)]
    p0: Option<PathBuf>,
    /// Also report the best sweep cut.
    #[arg(long)]
    sweep: bool,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SslPreset {
    Synthetic,
    File,
}

#[derive(Args)]
struct SslArgs {
    #[arg(long, value_enum, default_value = "synthetic")]
    preset: SslPreset,
    /// Hypergraph with ground-truth labels, for `--preset file`.
    #[arg(long, required_if_eq("preset", "file"))]
    hypergraph: Option<PathBuf>,
    /// Observed labels per class.
    #[arg(long, default_value_t = 3)]
    labels: usize,
    #[arg(long, default_value_t = 0.02)]
    beta: f64,
    /// Number of seeds, run as 0..k.
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    #[arg(long, value_enum, default_value = "rcd")]
    method: MethodArg,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long = "max-iters", default_value_t = 50_000_000)]
    max_iters: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenPreset {
    /// Random cardinality-based instance (N = R = 100, sets of 10, W = I).
    #[value(alias = "sec44")]
    Cardinality,
    /// Two planted clusters of unit hyperedges, written with true labels.
    #[value(alias = "sec62")]
    Planted,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    preset: GenPreset,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Exponent of the cardinality functions.
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Instance file (default: a generated cardinality instance).
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    #[command(flatten)]
    solver: SolverArgs,
    /// Directory for the per-cell trace files.
    #[arg(long = "out-dir")]
    out_dir: PathBuf,
}

/// Exit codes.
const USAGE: u8 = 1;
const DATA: u8 = 2;
const NOT_CONVERGED: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Project(args) => commands::project(args),
        Command::Pagerank(args) => commands::pagerank(args),
        Command::SslDemo(args) => commands::ssl_demo(args),
        Command::Gen(args) => commands::gen(args),
        Command::Bench(args) => commands::bench(args),
    };
    match result {
        Ok(commands::Outcome::Converged) => ExitCode::SUCCESS,
        Ok(commands::Outcome::NotConverged) => {
            eprintln!("warning: stopped before reaching the gap tolerance");
            ExitCode::from(NOT_CONVERGED)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = matches!(e.downcast_ref::<qdsfm::Error>(), Some(qdsfm::Error::Config(_)));
            ExitCode::from(if usage { USAGE } else { DATA })
        }
    }
}
