//! `simplexmatch`: command-line front end for the graph-matching toolkit.
//!
//! Exit codes: 0 success, 2 usage/config error, 3 numeric or runtime failure.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use simplexmatch_core::diagnostics::{error_cdf, property_report};
use simplexmatch_core::experiment::{
    run_benchmark, run_property_tracking, write_outputs, write_property_rows, AlgoKind,
    ExperimentConfig, StepSpec,
};
use simplexmatch_core::graph_models::{
    load_edge_list, sample_cer, sample_cgw, sample_goe, sample_permutation, subsample_pair,
};
use simplexmatch_core::io::{read_matrix_csv, read_permutation, write_matrix_csv, write_permutation};
use simplexmatch_core::population::{pop_init, pop_step, rates_for_gaps};
use simplexmatch_core::qap::{efficiency_ratio, EnergyContext};
use simplexmatch_core::rounding::gmwm;
use simplexmatch_core::solvers::{run_solver_with, UpdateKind};
use simplexmatch_core::spectral::{grampa_similarity, umeyama_similarity};
use simplexmatch_core::types::SymMatrix;
use simplexmatch_core::Error;

#[derive(Parser)]
#[command(name = "simplexmatch", version, about = "Graph matching over the unit simplex")]
struct Cli {
    /// Worker threads (SIMPLEXMATCH_THREADS overrides)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample graph pairs and write them as CSV matrices
    Generate(GenerateArgs),
    /// Solve one matching instance and write the similarity and permutation
    Solve(SolveArgs),
    /// Run a Monte-Carlo sweep from a JSON config
    Benchmark(BenchmarkArgs),
    /// Iterate the mean-field population dynamics
    Population(PopulationArgs),
    /// Structural diagnostics: property report, efficiency ratio, error CDF
    Diagnose(DiagnoseArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Model: goe, cgw, cer or subsample
    #[arg(long)]
    model: String,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    /// Edge density for CER
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Retention probability for subsampling
    #[arg(long, default_value_t = 1.0)]
    s: f64,
    /// Parent edge list for subsampling
    #[arg(long)]
    edge_list: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    /// First matrix (CSV) or edge list
    #[arg(long)]
    a: PathBuf,
    /// Second matrix (CSV) or edge list
    #[arg(long)]
    b: PathBuf,
    /// Algorithm: emd, pgd, grampa or umeyama
    #[arg(long)]
    algo: String,
    #[arg(long, default_value_t = 125)]
    iters: usize,
    /// Step rule: fixed, dynamic, heuristic:<theta> or const:<gamma>
    #[arg(long, default_value = "dynamic")]
    step: String,
    /// GRAMPA regularizer
    #[arg(long, default_value_t = 0.2)]
    eta: f64,
    /// Accepted for interface symmetry; the solvers are deterministic
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchmarkArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output directory (falls back to the config's `outputs` field)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PopulationArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    /// Comma list of rates, or "gaps:<g1,g2,...>" to derive a schedule
    #[arg(long)]
    rates: String,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DiagnoseArgs {
    #[command(subcommand)]
    which: DiagnoseCommand,
}

#[derive(Subcommand)]
enum DiagnoseCommand {
    /// Print the property report of a similarity matrix as JSON
    Report {
        /// Similarity matrix CSV
        #[arg(long)]
        x: PathBuf,
        /// Ground-truth permutation file
        #[arg(long)]
        truth: PathBuf,
    },
    /// Estimate the gradient-norm efficiency ratio of an instance
    Efficiency {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Empirical CDF of a one-column error CSV over a grid
    Cdf {
        #[arg(long)]
        errors: PathBuf,
        /// Comma list of grid points
        #[arg(long)]
        grid: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = std::env::var("SIMPLEXMATCH_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .or(cli.threads);
    if let Some(k) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("simplexmatch: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("simplexmatch: {e}");
            let code = match e {
                Error::InvalidParameter(_)
                | Error::DimensionMismatch { .. }
                | Error::Parse { .. } => 2,
                Error::NonFinite(_) | Error::Numeric(_) | Error::Io(_) => 3,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Generate(args) => generate(args),
        Command::Solve(args) => solve(args),
        Command::Benchmark(args) => benchmark(args),
        Command::Population(args) => population(args),
        Command::Diagnose(args) => diagnose(args.which),
    }
}

fn generate(args: GenerateArgs) -> Result<(), Error> {
    std::fs::create_dir_all(&args.out)?;
    match args.model.as_str() {
        "goe" => {
            let a = sample_goe(args.n, args.seed)?;
            write_matrix_csv(&args.out.join("a.csv"), a.as_array())?;
        }
        "cgw" => {
            let truth = sample_permutation(args.n, wrap_seed(args.seed, 1))?;
            let (a, b) = sample_cgw(args.n, args.sigma, &truth, wrap_seed(args.seed, 0))?;
            write_pair(&args.out, &a, &b)?;
            write_permutation(&args.out.join("truth.perm"), &truth)?;
        }
        "cer" => {
            let truth = sample_permutation(args.n, wrap_seed(args.seed, 1))?;
            let (a, b) = sample_cer(args.n, args.sigma, args.p, &truth, wrap_seed(args.seed, 0))?;
            write_pair(&args.out, &a, &b)?;
            write_permutation(&args.out.join("truth.perm"), &truth)?;
        }
        "subsample" => {
            let path = args.edge_list.ok_or_else(|| {
                Error::InvalidParameter("subsample needs --edge-list".into())
            })?;
            let h = load_edge_list(&path, None)?;
            let truth = sample_permutation(h.n(), wrap_seed(args.seed, 1))?;
            let (a, b) = subsample_pair(&h, args.s, wrap_seed(args.seed, 0))?;
            write_pair(&args.out, &a, &b.conjugate(&truth))?;
            write_permutation(&args.out.join("truth.perm"), &truth)?;
        }
        other => {
            return Err(Error::InvalidParameter(format!("unknown model {other:?}")));
        }
    }
    Ok(())
}

fn wrap_seed(seed: u64, tag: u64) -> u64 {
    simplexmatch_core::seed::derive(seed, &[tag])
}

fn write_pair(dir: &Path, a: &SymMatrix, b: &SymMatrix) -> Result<(), Error> {
    write_matrix_csv(&dir.join("a.csv"), a.as_array())?;
    write_matrix_csv(&dir.join("b.csv"), b.as_array())?;
    Ok(())
}

fn read_graph(path: &Path) -> Result<SymMatrix, Error> {
    if path.extension().is_some_and(|e| e == "csv") {
        SymMatrix::new(read_matrix_csv(path)?)
    } else {
        load_edge_list(path, None)
    }
}

fn solve(args: SolveArgs) -> Result<(), Error> {
    let a = read_graph(&args.a)?;
    let b = read_graph(&args.b)?;
    let algo = match args.algo.as_str() {
        "emd" => AlgoKind::Emd,
        "pgd" => AlgoKind::Pgd,
        "grampa" => AlgoKind::Grampa,
        "umeyama" => AlgoKind::Umeyama,
        other => return Err(Error::InvalidParameter(format!("unknown algo {other:?}"))),
    };
    let sim = match algo {
        AlgoKind::Emd | AlgoKind::Pgd => {
            let spec = StepSpec::try_from(args.step.clone()).map_err(Error::InvalidParameter)?;
            let rule = spec.to_rule(algo, args.iters)?;
            let ctx = EnergyContext::new(&a, &b)?;
            let update = if algo == AlgoKind::Emd {
                UpdateKind::Entropic
            } else {
                UpdateKind::Projected
            };
            run_solver_with(&ctx, args.iters, rule, update, |_, _| {})?
                .x_best
                .into_array()
        }
        AlgoKind::Grampa => grampa_similarity(&a, &b, args.eta)?,
        AlgoKind::Umeyama => umeyama_similarity(&a, &b)?,
    };
    let p_hat = gmwm(&sim)?;
    std::fs::create_dir_all(&args.out)?;
    write_matrix_csv(&args.out.join("similarity.csv"), &sim)?;
    write_permutation(&args.out.join("matching.perm"), &p_hat)?;
    Ok(())
}

fn benchmark(args: BenchmarkArgs) -> Result<(), Error> {
    let text = std::fs::read_to_string(&args.config)?;
    let cfg = ExperimentConfig::from_json(&text)?;
    let out = args
        .out
        .clone()
        .or_else(|| cfg.outputs.clone())
        .ok_or_else(|| Error::InvalidParameter("no output directory given".into()))?;
    let records = run_benchmark(&cfg)?;
    write_outputs(&records, &out)?;
    if cfg.track_properties {
        let rows = run_property_tracking(&cfg)?;
        write_property_rows(&rows, &out.join("properties.csv"))?;
    }
    Ok(())
}

fn population(args: PopulationArgs) -> Result<(), Error> {
    let rates: Vec<f64> = if let Some(gaps) = args.rates.strip_prefix("gaps:") {
        let gaps = parse_f64_list(gaps)?;
        rates_for_gaps(args.n, args.sigma, &gaps)?
    } else {
        parse_f64_list(&args.rates)?
    };
    let mut state = pop_init(args.n)?;
    let mut lines = Vec::with_capacity(rates.len() + 2);
    lines.push("k,x_diag,x_off,ratio,rounds_to_identity".to_string());
    lines.push(format!(
        "0,{},{},{},{}",
        state.x_diag,
        state.x_off,
        state.ratio(),
        state.rounds_to_identity()
    ));
    for &gamma in &rates {
        state = pop_step(&state, args.sigma, gamma)?;
        lines.push(format!(
            "{},{},{},{},{}",
            state.k,
            state.x_diag,
            state.x_off,
            state.ratio(),
            state.rounds_to_identity()
        ));
    }
    let text = lines.join("\n") + "\n";
    match args.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn diagnose(which: DiagnoseCommand) -> Result<(), Error> {
    match which {
        DiagnoseCommand::Report { x, truth } => {
            let x = read_matrix_csv(&x)?;
            let truth = read_permutation(&truth)?;
            let report = property_report(&x, &truth)?;
            let json = serde_json::to_string_pretty(&report)
                .map_err(|e| Error::Numeric(format!("serialize: {e}")))?;
            println!("{json}");
        }
        DiagnoseCommand::Efficiency { a, b, samples, seed } => {
            let a = read_graph(&a)?;
            let b = read_graph(&b)?;
            let ctx = EnergyContext::new(&a, &b)?;
            let rho = efficiency_ratio(&ctx, samples, seed)?;
            println!("{rho}");
        }
        DiagnoseCommand::Cdf { errors, grid } => {
            let text = std::fs::read_to_string(&errors)?;
            let mut values = Vec::new();
            for (idx, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let v: f64 = line.parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    msg: format!("bad error value {line:?}"),
                })?;
                values.push(v);
            }
            let grid = parse_f64_list(&grid)?;
            let cdf = error_cdf(&values, &grid)?;
            println!("threshold,fraction");
            for (t, f) in grid.iter().zip(cdf.iter()) {
                println!("{t},{f}");
            }
        }
    }
    Ok(())
}

fn parse_f64_list(text: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("bad number {s:?}")))
        })
        .collect()
}
