//! Command-line front end.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::abc::{default_limit, AbcConfig};
use crate::benchfns::FunctionRegistry;
use crate::error::{Error, Result};
use crate::firefly::{self, DistanceExponent, FaConfig};
use crate::harness::{
    self, compare, emit_plot_data, export, read_json, AlgorithmConfig, ExperimentPlan, ExperimentReport,
    ExportFormat,
};
use crate::parallel::Execution;
use crate::space::SearchSpace;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "SWARMOPT_OUT_DIR";
const FALLBACK_OUT_DIR: &str = "results";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "swarmopt", version, about = "Bee colony and firefly optimizers on benchmark functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a seeded multi-repetition experiment and write its report.
    Run(RunArgs),
    /// Compare two JSON reports checkpoint by checkpoint.
    Compare(CompareArgs),
    /// Write median convergence series (plot data) for JSON reports.
    Trace(TraceArgs),
    /// List registered objective functions.
    ListFunctions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Abc,
    Fa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl From<Format> for ExportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ExportFormat::Csv,
            Format::Json => ExportFormat::Json,
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value = "abc")]
    pub algorithm: Algorithm,
    #[arg(long, default_value = "rastrigin")]
    pub function: String,
    #[arg(long, default_value_t = 2)]
    pub dims: usize,
    #[arg(long, default_value_t = harness::DEFAULT_ITERATIONS)]
    pub iterations: usize,
    /// Food sources (abc) or fireflies (fa).
    #[arg(long, default_value_t = harness::DEFAULT_POPULATION)]
    pub population: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = harness::DEFAULT_REPETITIONS)]
    pub reps: usize,
    /// Abandonment limit (abc); defaults to population * dims.
    #[arg(long)]
    pub limit: Option<u64>,
    #[arg(long, default_value_t = firefly::DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, default_value_t = firefly::DEFAULT_BETA0)]
    pub beta0: f64,
    #[arg(long, default_value_t = firefly::DEFAULT_GAMMA)]
    pub gamma: f64,
    /// Distance power inside exp(-gamma r^p): 1 or 2.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub exponent_power: u8,
    /// Uniform bounds for every dimension, LO:HI.
    #[arg(long, default_value = "-30:30", allow_hyphen_values = true, value_parser = parse_bounds)]
    pub bounds: (f64, f64),
    /// Comma-separated checkpoint iterations; defaults to fifths of --iterations.
    #[arg(long, value_delimiter = ',')]
    pub checkpoints: Option<Vec<usize>>,
    /// Load the whole plan from a JSON file instead of flags.
    #[arg(long, conflicts_with_all = ["algorithm", "function", "dims", "iterations", "population", "seed", "reps", "limit", "alpha", "beta0", "gamma", "exponent_power", "bounds", "checkpoints"])]
    pub plan: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Run repetitions one after another instead of on the thread pool.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub first: PathBuf,
    pub second: PathBuf,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(required = true)]
    pub reports: Vec<PathBuf>,
    /// Directory for `<report>_plot.csv` files; defaults to $SWARMOPT_OUT_DIR or ./results.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

fn parse_bounds(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got `{s}`"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("lower bound: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("upper bound: {e}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("need finite LO < HI, got {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// `iterations/5, 2·iterations/5, …, iterations`, without zeros or repeats.
pub fn default_checkpoints(iterations: usize) -> Vec<usize> {
    let mut cps: Vec<usize> = (1..=5).map(|k| k * iterations / 5).filter(|&c| c > 0).collect();
    cps.dedup();
    cps
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

fn default_out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(FALLBACK_OUT_DIR))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let registry = FunctionRegistry::with_builtins();
    let result = match cli.command {
        Command::Run(a) => cmd_run(&a, &registry, out),
        Command::Compare(a) => cmd_compare(&a, out),
        Command::Trace(a) => cmd_trace(&a, out),
        Command::ListFunctions => cmd_list_functions(&registry, out).map_err(Failure::from),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            EXIT_USAGE
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn build_plan(a: &RunArgs, registry: &FunctionRegistry) -> std::result::Result<ExperimentPlan, Failure> {
    if let Some(path) = &a.plan {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let plan: ExperimentPlan = serde_json::from_str(&text).map_err(|source| Error::Json {
            path: path.clone(),
            source,
        })?;
        if !registry.contains(&plan.objective) {
            return Err(Failure::Usage(unknown_function(&plan.objective, registry)));
        }
        return Ok(plan);
    }
    if !registry.contains(&a.function) {
        return Err(Failure::Usage(unknown_function(&a.function, registry)));
    }
    if let Err(e) = registry.lookup(&a.function, a.dims) {
        return Err(Failure::Usage(e.to_string()));
    }
    let algorithm = match a.algorithm {
        Algorithm::Abc => AlgorithmConfig::Abc(AbcConfig {
            colony_size: a.population,
            limit: a.limit.unwrap_or_else(|| default_limit(a.population, a.dims)),
            max_iterations: a.iterations,
        }),
        Algorithm::Fa => AlgorithmConfig::Fa(FaConfig {
            population: a.population,
            alpha: a.alpha,
            beta0: a.beta0,
            gamma: a.gamma,
            exponent: DistanceExponent::try_from(a.exponent_power).map_err(|e| Failure::Usage(e.to_string()))?,
            max_iterations: a.iterations,
        }),
    };
    let plan = ExperimentPlan {
        algorithm,
        objective: a.function.clone(),
        dims: a.dims,
        space: SearchSpace::uniform(a.dims, a.bounds.0, a.bounds.1).map_err(|e| Failure::Usage(e.to_string()))?,
        repetitions: a.reps,
        base_seed: a.seed,
        checkpoints: a.checkpoints.clone().unwrap_or_else(|| default_checkpoints(a.iterations)),
    };
    plan.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(plan)
}

fn unknown_function(name: &str, registry: &FunctionRegistry) -> String {
    format!(
        "unknown function `{name}`; registered functions: {}",
        registry.names().join(", ")
    )
}

fn write_header(plan: &ExperimentPlan, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "algorithm    {}", plan.algorithm.name())?;
    writeln!(out, "function     {} ({}-D)", plan.objective, plan.dims)?;
    let (lo, hi) = (plan.space.lower(), plan.space.upper());
    if lo.windows(2).all(|w| w[0] == w[1]) && hi.windows(2).all(|w| w[0] == w[1]) {
        writeln!(out, "bounds       {}:{}", lo[0], hi[0])?;
    } else {
        writeln!(out, "bounds       lower {lo:?} upper {hi:?}")?;
    }
    match &plan.algorithm {
        AlgorithmConfig::Abc(c) => {
            writeln!(out, "population   {}", c.colony_size)?;
            writeln!(out, "iterations   {}", c.max_iterations)?;
            writeln!(out, "limit        {}", c.limit)?;
        }
        AlgorithmConfig::Fa(c) => {
            writeln!(out, "population   {}", c.population)?;
            writeln!(out, "iterations   {}", c.max_iterations)?;
            writeln!(out, "alpha        {}", c.alpha)?;
            writeln!(out, "beta0        {}", c.beta0)?;
            writeln!(out, "gamma        {}", c.gamma)?;
            writeln!(out, "exponent     {}", u8::from(c.exponent))?;
        }
    }
    writeln!(out, "reps         {}", plan.repetitions)?;
    writeln!(out, "base seed    {}", plan.base_seed)?;
    Ok(())
}

pub fn write_summary(report: &ExperimentReport, out: &mut dyn Write) -> std::io::Result<()> {
    write!(out, "{:<10}", "iteration")?;
    for s in &report.checkpoints {
        write!(out, "{:>14}", s.checkpoint)?;
    }
    writeln!(out)?;
    type Field = fn(&harness::CheckpointStats) -> f64;
    let fields: [(&str, Field); 4] = [
        ("min", |s| s.min),
        ("median", |s| s.median),
        ("mean", |s| s.mean),
        ("std", |s| s.std),
    ];
    for (label, get) in fields {
        write!(out, "{label:<10}")?;
        for s in &report.checkpoints {
            write!(out, "{:>14.6e}", get(s))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn io_out(e: std::io::Error) -> Failure {
    Failure::Runtime(Error::io("<stdout>", e))
}

fn cmd_run(a: &RunArgs, registry: &FunctionRegistry, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let plan = build_plan(a, registry)?;
    write_header(&plan, out).map_err(io_out)?;
    let execution = if a.sequential { Execution::Sequential } else { Execution::Parallel };
    let report = harness::run_experiment_with(&plan, registry, execution)?;

    let format = ExportFormat::from(a.format);
    let destination = a.out.clone().unwrap_or_else(|| {
        default_out_dir().join(format!(
            "{}_{}_{}d_seed{}.{}",
            plan.algorithm.name(),
            plan.objective,
            plan.dims,
            plan.base_seed,
            format.extension()
        ))
    });
    let written = export(&report, format, &destination)?;

    writeln!(out).map_err(io_out)?;
    write_summary(&report, out).map_err(io_out)?;
    writeln!(out).map_err(io_out)?;
    writeln!(
        out,
        "evaluations  {}   wall time {:.3}s",
        report.total_evaluations, report.total_wall_time
    )
    .map_err(io_out)?;
    for p in written {
        writeln!(out, "wrote        {}", p.display()).map_err(io_out)?;
    }
    Ok(())
}

fn cmd_compare(a: &CompareArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let first = read_json(&a.first)?;
    let second = read_json(&a.second)?;
    let table = compare(&first, &second)?;
    write!(out, "{table}").map_err(io_out)?;
    Ok(())
}

fn plot_path(dir: &Path, report_path: &Path) -> PathBuf {
    let stem = report_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".into());
    dir.join(format!("{stem}_plot.csv"))
}

fn cmd_trace(a: &TraceArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let dir = a.out_dir.clone().unwrap_or_else(default_out_dir);
    for path in &a.reports {
        let report = read_json(path)?;
        let dest = plot_path(&dir, path);
        emit_plot_data(&report, &dest)?;
        writeln!(out, "wrote {} ({})", dest.display(), report.algorithm()).map_err(io_out)?;
    }
    Ok(())
}

pub fn cmd_list_functions(registry: &FunctionRegistry, out: &mut dyn Write) -> Result<()> {
    let io = |e| Error::io("<stdout>", e);
    writeln!(out, "{:<12} {:<10} {:<18} description", "name", "dims", "known minimum").map_err(io)?;
    for entry in registry.entries() {
        let dims = format!("{}..={}", entry.dims.start(), entry.dims.end());
        let minimum = match entry.known_minimum(*entry.dims.start()) {
            Some(v) => format!("{v} at origin"),
            None => "unknown".to_string(),
        };
        writeln!(out, "{:<12} {:<10} {:<18} {}", entry.name, dims, minimum, entry.description).map_err(io)?;
    }
    Ok(())
}
