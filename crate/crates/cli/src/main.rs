//! Command-line front end: instance generation, single colorings, benchmark
//! sweeps, report regeneration, and the exact chromatic oracle.
//!
//! Every run is reconstructible from the manifest its output directory
//! carries. Exit codes are machine-parseable: 0 success, 1 I/O failure,
//! 2 usage error, 3 capability limit (e.g. a graph too large for the exact
//! oracle).

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use peelcolor_core::rand_chacha::rand_core::SeedableRng;
use peelcolor_core::rand_chacha::ChaCha8Rng;

use peelcolor_core::anneal::{SaSchedule, TimingConstants};
use peelcolor_core::classical::SamplerParams;
use peelcolor_core::color::{
    exact_chromatic_number, greedy_color, ClassicalSampler, ColorError, IsSampler,
    QuboAnnealSampler,
};
use peelcolor_core::dimacs::{read_dimacs, read_instance_dir, write_instance_set};
use peelcolor_core::gen::{generate_test_set_with, GenOptions};
use peelcolor_core::report::{emit_report, read_manifest_p_target, report_from_runs_csv};
use peelcolor_core::sweep::{run_sweep_journaled, BenchConfig, SamplerKind};

const ENV_OUT: &str = "PEELCOLOR_OUT";
const ENV_JOBS: &str = "PEELCOLOR_JOBS";

// ============================================================================
// Errors and exit codes
// ============================================================================

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Capability(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
            CliError::Capability(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Io(msg) | CliError::Capability(msg) => {
                f.write_str(msg)
            }
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn io_failure(msg: impl std::fmt::Display) -> CliError {
    CliError::Io(msg.to_string())
}

// ============================================================================
// Argument definitions
// ============================================================================

#[derive(Parser)]
#[command(
    name = "peelcolor",
    version,
    about = "Greedy graph coloring by independent-set peeling, with classical and annealing-emulated samplers"
)]
struct Cli {
    /// Config file with `key = value` lines; command-line flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a planted-colorable benchmark instance set.
    Gen(GenArgs),
    /// Color one DIMACS graph and print the result.
    Color(ColorArgs),
    /// Run a benchmark sweep over an instance directory.
    Sweep(SweepArgs),
    /// Regenerate stats and plots from a sweep's runs.csv.
    Report(ReportArgs),
    /// Exact chromatic number of a small graph.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Comma-separated graph sizes.
    #[arg(long, default_value = "20,40,60")]
    sizes: String,
    /// Instances per size.
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// Edge-density parameter c = m/n.
    #[arg(long, default_value_t = 4.5)]
    c: f64,
    /// Planted chromatic bound.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Master seed; per-instance seeds derive from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory (or PEELCOLOR_OUT).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Balanced class sizes instead of uniform draws.
    #[arg(long)]
    balanced: bool,
    /// Redraw instances that came out bipartite.
    #[arg(long)]
    reject_bipartite: bool,
}

#[derive(Args)]
struct ColorArgs {
    /// DIMACS .col file.
    #[arg(long)]
    graph: PathBuf,
    /// classical | qubo | random.
    #[arg(long, default_value = "classical")]
    sampler: SamplerKind,
    /// Independent sets sampled per iteration.
    #[arg(long, default_value_t = 1)]
    s: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Colorability parameter of the classical sampler.
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Directory of .col/.meta instance files.
    #[arg(long)]
    instances: PathBuf,
    /// Comma-separated sampler kinds.
    #[arg(long, default_value = "classical,qubo")]
    samplers: String,
    /// Comma-separated sample counts.
    #[arg(long = "s-list", default_value = "1,10,20,30,40,50,60,70,80,90,100")]
    s_list: String,
    /// Runs per (instance, sampler, s) cell.
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long = "p-target")]
    p_target: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory (or PEELCOLOR_OUT).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (or PEELCOLOR_JOBS); default all cores.
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct ReportArgs {
    /// Directory containing runs.csv (and optionally a manifest).
    #[arg(long = "sweep-dir")]
    sweep_dir: PathBuf,
    /// Override the manifest's p_target.
    #[arg(long = "p-target")]
    p_target: Option<f64>,
    /// Write the regenerated report elsewhere (default: in place).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// DIMACS .col file.
    #[arg(long)]
    graph: PathBuf,
}

/// Solver knobs shared by `color` and `sweep`; unset flags fall back to the
/// config file, then to the defaults.
#[derive(Args, Clone)]
struct SolverArgs {
    /// MIS penalty weight (minimum 2).
    #[arg(long)]
    alpha: Option<f64>,
    /// Failed sampling rounds tolerated per iteration.
    #[arg(long = "retry-cap")]
    retry_cap: Option<usize>,
    /// Annealing sweeps per read.
    #[arg(long)]
    sweeps: Option<usize>,
    #[arg(long = "beta-initial")]
    beta_initial: Option<f64>,
    #[arg(long = "beta-final")]
    beta_final: Option<f64>,
    /// Anneal restarts per read.
    #[arg(long)]
    restarts: Option<usize>,
    /// Modeled per-read anneal time, microseconds.
    #[arg(long = "t-anneal-us")]
    t_anneal_us: Option<f64>,
    #[arg(long = "t-readout-us")]
    t_readout_us: Option<f64>,
    #[arg(long = "t-delay-us")]
    t_delay_us: Option<f64>,
    /// Modeled one-time programming overhead, microseconds.
    #[arg(long = "t-program-us")]
    t_program_us: Option<f64>,
}

// ============================================================================
// Config file
// ============================================================================

/// `key = value` lines; `#` comments. Flags override these values.
struct ConfigFile {
    values: HashMap<String, String>,
}

impl ConfigFile {
    fn load(path: Option<&Path>) -> Result<ConfigFile, CliError> {
        let mut values = HashMap::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path)
                .map_err(|e| io_failure(format!("{}: {e}", path.display())))?;
            for (idx, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    usage(format!(
                        "{}:{}: expected key = value, got {line:?}",
                        path.display(),
                        idx + 1
                    ))
                })?;
                values.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(ConfigFile { values })
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| usage(format!("config key {key} has unparseable value {raw:?}"))),
        }
    }
}

fn env_parsed<T: FromStr>(name: &str) -> Result<Option<T>, CliError> {
    match std::env::var(name) {
        Err(_) => Ok(None),
        Ok(raw) => raw.parse::<T>().map(Some).map_err(|_| {
            usage(format!(
                "environment variable {name} has unparseable value {raw:?}"
            ))
        }),
    }
}

/// flag > environment > config file > default.
fn resolve<T>(flag: Option<T>, env: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(env).or(file).unwrap_or(default)
}

fn resolve_out(flag: Option<PathBuf>, config: &ConfigFile) -> Result<PathBuf, CliError> {
    let env = env_parsed::<PathBuf>(ENV_OUT)?;
    let file = config.get::<PathBuf>("out")?;
    flag.or(env)
        .or(file)
        .ok_or_else(|| usage("no output directory: pass --out, set PEELCOLOR_OUT, or put out = ... in the config file"))
}

struct SolverSettings {
    alpha: f64,
    retry_cap: usize,
    schedule: SaSchedule,
    timing: TimingConstants,
}

fn resolve_solver(args: &SolverArgs, config: &ConfigFile) -> Result<SolverSettings, CliError> {
    let schedule = SaSchedule::default();
    let timing = TimingConstants::default();
    let settings = SolverSettings {
        alpha: resolve(args.alpha, None, config.get("alpha")?, 2.0),
        retry_cap: resolve(args.retry_cap, None, config.get("retry_cap")?, 10),
        schedule: SaSchedule {
            sweeps: resolve(args.sweeps, None, config.get("sweeps")?, schedule.sweeps),
            beta_initial: resolve(
                args.beta_initial,
                None,
                config.get("beta_initial")?,
                schedule.beta_initial,
            ),
            beta_final: resolve(
                args.beta_final,
                None,
                config.get("beta_final")?,
                schedule.beta_final,
            ),
            restarts: resolve(
                args.restarts,
                None,
                config.get("restarts")?,
                schedule.restarts,
            ),
        },
        timing: TimingConstants {
            t_anneal_us: resolve(
                args.t_anneal_us,
                None,
                config.get("t_anneal_us")?,
                timing.t_anneal_us,
            ),
            t_readout_us: resolve(
                args.t_readout_us,
                None,
                config.get("t_readout_us")?,
                timing.t_readout_us,
            ),
            t_delay_us: resolve(
                args.t_delay_us,
                None,
                config.get("t_delay_us")?,
                timing.t_delay_us,
            ),
            t_program_us: resolve(
                args.t_program_us,
                None,
                config.get("t_program_us")?,
                timing.t_program_us,
            ),
        },
    };
    if settings.alpha < 2.0 {
        return Err(usage(format!(
            "--alpha {} is below the minimum of 2",
            settings.alpha
        )));
    }
    if settings.retry_cap < 1 {
        return Err(usage("--retry-cap must be at least 1"));
    }
    if settings.schedule.sweeps < 1 || settings.schedule.restarts < 1 {
        return Err(usage("--sweeps and --restarts must be at least 1"));
    }
    if !(settings.schedule.beta_final >= settings.schedule.beta_initial
        && settings.schedule.beta_initial > 0.0)
    {
        return Err(usage("need beta_final >= beta_initial > 0"));
    }
    Ok(settings)
}

fn parse_list<T: FromStr>(raw: &str, what: &str) -> Result<Vec<T>, CliError> {
    let mut out = Vec::new();
    for part in raw.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(
            part.parse::<T>()
                .map_err(|_| usage(format!("bad {what} entry {part:?}")))?,
        );
    }
    if out.is_empty() {
        return Err(usage(format!("empty {what} list")));
    }
    Ok(out)
}

// ============================================================================
// Commands
// ============================================================================

fn cmd_gen(args: GenArgs, config: &ConfigFile) -> Result<(), CliError> {
    let out = resolve_out(args.out, config)?;
    let sizes: Vec<usize> = parse_list(&args.sizes, "size")?;
    let options = GenOptions {
        balanced_classes: args.balanced,
        reject_bipartite: args.reject_bipartite,
    };
    let set = generate_test_set_with(&sizes, args.count, args.k, args.c, args.seed, &options)
        .map_err(|e| usage(e.to_string()))?;
    let paths = write_instance_set(&set, &out).map_err(io_failure)?;
    println!("out = {}", out.display());
    println!("instances = {}", paths.len());
    println!("sizes = {}", args.sizes);
    println!("per_size = {}", args.count);
    println!("master_seed = {}", args.seed);
    Ok(())
}

fn build_sampler(
    kind: SamplerKind,
    k: usize,
    settings: &SolverSettings,
) -> Result<Box<dyn IsSampler>, CliError> {
    if k < 2 {
        return Err(usage("--k must be at least 2"));
    }
    Ok(match kind {
        SamplerKind::Classical => Box::new(ClassicalSampler {
            params: SamplerParams::new(k),
        }),
        SamplerKind::Qubo => Box::new(QuboAnnealSampler::sa(
            settings.alpha,
            settings.schedule,
            settings.timing,
        )),
        SamplerKind::Random => Box::new(QuboAnnealSampler::random(settings.alpha, settings.timing)),
    })
}

fn cmd_color(args: ColorArgs, config: &ConfigFile) -> Result<(), CliError> {
    if args.s < 1 {
        return Err(usage("--s must be at least 1"));
    }
    let settings = resolve_solver(&args.solver, config)?;
    let graph = read_dimacs(&args.graph)
        .map_err(|e| io_failure(format!("{}: {e}", args.graph.display())))?;
    let sampler = build_sampler(args.sampler, args.k, &settings)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let run = greedy_color(
        &graph,
        sampler.as_ref(),
        args.s,
        settings.retry_cap,
        &mut rng,
    );
    debug_assert!(run.coloring.is_proper(&graph).unwrap());

    println!("graph = {}", args.graph.display());
    println!("n = {}", graph.n());
    println!("m = {}", graph.m());
    println!("sampler = {}", args.sampler);
    println!("s = {}", args.s);
    println!("seed = {}", args.seed);
    println!("colors = {}", run.coloring.num_colors());
    for (color, class) in run.coloring.classes().iter().enumerate() {
        let members: Vec<String> = class.iter().map(|v| v.to_string()).collect();
        println!("class {color} = {}", members.join(" "));
    }
    println!("iterations = {}", run.k_used);
    println!("rejected_rounds = {}", run.r_a);
    println!("wallclock_us = {:.3}", run.wallclock.as_secs_f64() * 1e6);
    if let Some(qpu) = run.qpu_modeled_us {
        println!("qpu_modeled_us = {qpu}");
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs, config: &ConfigFile) -> Result<(), CliError> {
    let out = resolve_out(args.out, config)?;
    let settings = resolve_solver(&args.solver, config)?;
    let samplers: Vec<SamplerKind> = parse_list(&args.samplers, "sampler")?;
    let s_values: Vec<usize> = parse_list(&args.s_list, "sample count")?;
    let jobs: Option<usize> = match args.jobs {
        Some(j) => Some(j),
        None => match env_parsed::<usize>(ENV_JOBS)? {
            Some(j) => Some(j),
            None => config.get::<usize>("jobs")?,
        },
    };

    let instances = read_instance_dir(&args.instances)
        .map_err(|e| io_failure(format!("{}: {e}", args.instances.display())))?;
    if instances.is_empty() {
        return Err(usage(format!(
            "no .col instances found in {}",
            args.instances.display()
        )));
    }

    let bench = BenchConfig {
        samplers,
        s_values,
        runs_per_setting: resolve(args.runs, None, config.get("runs")?, 20),
        p_target: resolve(args.p_target, None, config.get("p_target")?, 0.99),
        master_seed: args.seed,
        retry_cap: settings.retry_cap,
        alpha: settings.alpha,
        sa_schedule: settings.schedule,
        timing: settings.timing,
        jobs,
    };

    fs::create_dir_all(&out).map_err(|e| io_failure(format!("{}: {e}", out.display())))?;
    let journal = out.join("journal.csv");
    let sweep = run_sweep_journaled(&instances, &bench, &journal).map_err(|e| match e {
        peelcolor_core::sweep::BenchError::Io { .. } => io_failure(e),
        other => usage(other.to_string()),
    })?;
    let files = emit_report(&sweep, &out).map_err(io_failure)?;

    println!("out = {}", out.display());
    println!("instances = {}", instances.len());
    println!("records = {}", sweep.records.len());
    println!("cells = {}", sweep.cells.len());
    println!("runs_csv = {}", files.runs_csv.display());
    println!("stats_csv = {}", files.stats_csv.display());
    println!("plots = {}", files.plots.len());
    Ok(())
}

fn cmd_report(args: ReportArgs) -> Result<(), CliError> {
    let runs_csv = args.sweep_dir.join("runs.csv");
    if !runs_csv.exists() {
        return Err(io_failure(format!("{} not found", runs_csv.display())));
    }
    let p_target = args
        .p_target
        .or_else(|| read_manifest_p_target(&args.sweep_dir))
        .unwrap_or(0.99);
    let out = args.out.unwrap_or_else(|| args.sweep_dir.clone());
    let files = report_from_runs_csv(&runs_csv, p_target, &out).map_err(io_failure)?;
    println!("out = {}", out.display());
    println!("p_target = {p_target}");
    println!("stats_csv = {}", files.stats_csv.display());
    println!("plots = {}", files.plots.len());
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<(), CliError> {
    let graph = read_dimacs(&args.graph)
        .map_err(|e| io_failure(format!("{}: {e}", args.graph.display())))?;
    match exact_chromatic_number(&graph) {
        Ok(chi) => {
            println!("graph = {}", args.graph.display());
            println!("n = {}", graph.n());
            println!("m = {}", graph.m());
            println!("chromatic_number = {chi}");
            Ok(())
        }
        Err(e @ ColorError::SizeCapExceeded { .. }) => Err(CliError::Capability(e.to_string())),
        Err(e) => Err(io_failure(e)),
    }
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    let config = ConfigFile::load(cli.config.as_deref())?;
    match cli.command {
        Command::Gen(args) => cmd_gen(args, &config),
        Command::Color(args) => cmd_color(args, &config),
        Command::Sweep(args) => cmd_sweep(args, &config),
        Command::Report(args) => cmd_report(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
