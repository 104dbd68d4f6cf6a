//! `inav`: coefficient tables and coning-scenario runs from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use inav_core::config::{parse_config, parse_variants};
use inav_core::scenario::{log_space, sweep, sweep_csv};
use inav_core::strapdown::NavRateEpoch;
use inav_core::{run_scenario, AlgoVariant, ScenarioConfig};
use inav_symbolic::analysis::{error_order_pattern, EXPECTED_ORDER_PATTERN};
use inav_symbolic::random::random_order_trials;
use inav_symbolic::{emit_tables, Axis, MotionCoefficients};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exit status when a functional-iteration interval hit its iteration limit.
const EXIT_NONCONVERGED: u8 = 3;

const DEFAULT_VARIANTS: &str = "typical,enhanced,fiter,vpif";

#[derive(Parser)]
#[command(name = "inav", version, about = "Strapdown inertial navigation algorithm analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact polynomial coefficient tables of the attitude and velocity algorithms.
    Tables(TablesArgs),
    /// Runs the coning scenario and writes per-epoch errors.
    Run(RunArgs),
    /// Runs the scenario over log-spaced coning frequencies and writes maximum errors.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct TablesArgs {
    /// Also check the error-order pattern on K random integer coefficient sets.
    #[arg(long, value_name = "K", default_value_t = 0)]
    random_trials: usize,
    #[arg(long, value_name = "S", default_value_t = 1)]
    seed: u64,
    /// Vector component shown in the tables.
    #[arg(long, default_value = "x")]
    axis: Axis,
    /// Functional-iteration rows in the attitude table.
    #[arg(long, default_value_t = 8)]
    iterations: usize,
    /// Highest power of t kept and shown.
    #[arg(long, default_value_t = 8)]
    degree: usize,
    /// Largest magnitude of the random integer coefficients.
    #[arg(long, default_value_t = 20)]
    bound: i64,
    #[arg(long)]
    csv: bool,
}

/// Settings shared by `run` and `sweep`; flags override the config file.
#[derive(Args)]
struct ScenarioArgs {
    /// Plain-text key = value file.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Samples per update interval.
    #[arg(long)]
    samples: Option<usize>,
    /// Comma-separated algorithms, e.g. typical,enhanced,fiter,vpif,viagen8.
    #[arg(long)]
    variants: Option<String>,
    /// Run length (s).
    #[arg(long)]
    duration: Option<f64>,
    /// IMU sampling rate (Hz).
    #[arg(long)]
    fs: Option<f64>,
    /// Coning half-angle (deg).
    #[arg(long)]
    coning_angle: Option<f64>,
    /// Where compensation rates are taken: start or midpoint.
    #[arg(long)]
    epoch: Option<String>,
    /// Exit successfully even when the functional iteration hit its limit.
    #[arg(long)]
    allow_nonconverged: bool,
}

#[derive(Args)]
struct RunArgs {
    /// Coning frequency (Hz).
    #[arg(long)]
    fc: Option<f64>,
    /// Output CSV; a summary is printed either way.
    #[arg(long, value_name = "CSV")]
    out: Option<PathBuf>,
    #[command(flatten)]
    scenario: ScenarioArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 0.01)]
    fc_min: f64,
    #[arg(long, default_value_t = 20.0)]
    fc_max: f64,
    #[arg(long, default_value_t = 20)]
    points: usize,
    /// Output CSV; standard output when absent.
    #[arg(long, value_name = "CSV")]
    out: Option<PathBuf>,
    #[command(flatten)]
    scenario: ScenarioArgs,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Tables(a) => tables(&a),
        Command::Run(a) => run(&a),
        Command::Sweep(a) => run_sweep(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn tables(a: &TablesArgs) -> Result<ExitCode> {
    if a.degree == 0 {
        bail!("--degree must be at least 1");
    }
    let mc = MotionCoefficients::table_example();
    let (att, vel) = emit_tables(&mc, a.axis, a.iterations, a.degree);
    if a.csv {
        print!("{}\n{}", att.to_csv(), vel.to_csv());
    } else {
        println!("{}\n{}", att.to_text(), vel.to_text());
    }

    println!("error orders against the converged functional iteration:");
    for r in error_order_pattern(&mc, a.degree.max(8)) {
        match r.order {
            Some(k) => println!("  {:<18} O(t^{k})", r.candidate),
            None => println!("  {:<18} exact through t^{}", r.candidate, a.degree),
        }
    }

    if a.random_trials == 0 {
        return Ok(ExitCode::SUCCESS);
    }
    if a.bound < 1 {
        bail!("--bound must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let trials = random_order_trials(&mut rng, a.random_trials, a.bound, 8);
    let misses: Vec<_> = trials.iter().filter(|t| !t.matches_expected()).collect();
    println!(
        "random coefficient sets: {}/{} follow the order pattern {:?}",
        trials.len() - misses.len(),
        trials.len(),
        EXPECTED_ORDER_PATTERN
    );
    for t in &misses {
        println!("  mismatch: orders {:?} for {:?}", t.orders, t.motion);
    }
    Ok(if misses.is_empty() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

/// Defaults, then the config file, then flags.
fn resolve(args: &ScenarioArgs, fc: Option<f64>) -> Result<(ScenarioConfig, Vec<AlgoVariant>)> {
    let mut cfg = ScenarioConfig::default();
    let mut variants = None;
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file = parse_config(&text, cfg).with_context(|| format!("in {}", path.display()))?;
        cfg = file.scenario;
        variants = file.variants;
    }
    if let Some(x) = fc {
        cfg.coning_freq = x;
    }
    if let Some(n) = args.samples {
        cfg.samples = n;
    }
    if let Some(x) = args.duration {
        cfg.duration = x;
    }
    if let Some(x) = args.fs {
        cfg.sample_rate = x;
    }
    if let Some(x) = args.coning_angle {
        cfg.coning_angle_deg = x;
    }
    if let Some(e) = &args.epoch {
        cfg.nav_rate_epoch = match e.as_str() {
            "start" => NavRateEpoch::Start,
            "midpoint" => NavRateEpoch::Midpoint,
            other => bail!("unknown epoch '{other}' (start or midpoint)"),
        };
    }
    if let Some(list) = &args.variants {
        variants = Some(parse_variants(list)?);
    }
    let variants = variants.unwrap_or_else(|| parse_variants(DEFAULT_VARIANTS).expect("default variants parse"));
    if variants.is_empty() {
        bail!("no algorithms selected");
    }
    cfg.validate()?;
    if cfg.samples > 1 {
        eprintln!(
            "note: {}-sample increments are fitted by moment matching, not by optimized coning/sculling coefficient tables",
            cfg.samples
        );
    }
    Ok((cfg, variants))
}

fn write_output(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn nonconverged_exit(total: usize, allow: bool) -> ExitCode {
    if total == 0 {
        return ExitCode::SUCCESS;
    }
    if allow {
        eprintln!("warning: {total} functional-iteration intervals hit the iteration limit");
        ExitCode::SUCCESS
    } else {
        eprintln!(
            "error: {total} functional-iteration intervals hit the iteration limit (pass --allow-nonconverged to accept)"
        );
        ExitCode::from(EXIT_NONCONVERGED)
    }
}

fn run(a: &RunArgs) -> Result<ExitCode> {
    let (cfg, variants) = resolve(&a.scenario, a.fc)?;
    let result = run_scenario(&cfg, &variants)?;
    if let Some(path) = &a.out {
        write_output(path, &result.to_csv())?;
    }
    println!(
        "f_c = {} Hz, N = {}, T = {} s, {} s",
        cfg.coning_freq,
        cfg.samples,
        cfg.interval(),
        cfg.duration
    );
    println!(
        "{:<24} {:>13} {:>13} {:>13} {:>13} {:>10}",
        "algorithm", "att (rad)", "vel (m/s)", "pos (m)", "west-east (m)", "capped"
    );
    for v in &variants {
        let label = v.label();
        let capped = result.nonconverged.get(&label).copied().unwrap_or(0);
        match result.summary(&label) {
            Some(s) => println!(
                "{label:<24} {:>13.4e} {:>13.4e} {:>13.4e} {:>13.4e} {capped:>10}",
                s.max_att_err, s.max_vel_err, s.max_pos_err, s.max_we_pos_err
            ),
            None => println!("{label:<24} (no epochs)"),
        }
    }
    Ok(nonconverged_exit(result.nonconverged.values().sum(), a.scenario.allow_nonconverged))
}

fn run_sweep(a: &SweepArgs) -> Result<ExitCode> {
    if !(a.fc_min > 0.0) || !(a.fc_max >= a.fc_min) {
        bail!("need 0 < --fc-min <= --fc-max");
    }
    if a.points == 0 {
        bail!("--points must be at least 1");
    }
    let (cfg, variants) = resolve(&a.scenario, None)?;
    let rows = sweep(&cfg, &log_space(a.fc_min, a.fc_max, a.points), &variants)?;
    let csv = sweep_csv(&rows);
    match &a.out {
        Some(path) => write_output(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(nonconverged_exit(rows.iter().map(|r| r.nonconverged).sum(), a.scenario.allow_nonconverged))
}
