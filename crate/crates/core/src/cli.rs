//! Command-line entry point. The binary stays thin: flags parse here and
//! dispatch into the library.
//!
//! Exit codes: 0 on success, 1 on runtime failure (including a failed
//! selftest or coverage criterion), 2 on configuration errors.

use crate::config::SimulationConfig;
use crate::error::{Error, Result};
use crate::harness::{self, coverage_threshold, PointResult};
use crate::report::{self, CoverageRow, QuantileRow};
use crate::student_t::{significance_level, t_quantile_upper_bound, TDist};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "mla-bandit",
    version,
    about = "Multi-armed bandit simulator with ML-generated surrogate rewards"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// TOML configuration file; defaults describe a five-arm Gaussian run.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Base seed for all randomness; overrides the config seed.
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,

    /// Output directory for CSV/JSON files.
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,

    /// Override one config key after file parsing, e.g.
    /// --set sim.horizon=2000. Repeatable; unknown keys are errors.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Worker threads for replications (default: all cores).
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
}

impl CommonArgs {
    fn load_config(&self) -> Result<SimulationConfig> {
        if let Some(n) = self.threads {
            // Ignore the error if a pool already exists (tests, repeat calls).
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
        SimulationConfig::load(self.config.as_deref(), &self.set, self.seed)
    }

    fn out_dir(&self) -> Result<&Path> {
        std::fs::create_dir_all(&self.out)?;
        Ok(&self.out)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run every configured policy at the configured point; writes
    /// results.csv and summary.json (plus traces.csv when enabled).
    Simulate(CommonArgs),
    /// Run the configured sweep axis over its grid.
    Sweep(CommonArgs),
    /// Estimate empirical miscoverage of the confidence bound over the
    /// configured (n, N, rho, delta) grid; exits nonzero if any point
    /// breaches its binomial threshold.
    Coverage(CommonArgs),
    /// Tabulate the closed-form quantile bound against the exact
    /// t-quantile; every gap must be nonnegative.
    QuantileTable(CommonArgs),
    /// Run the built-in property suites.
    Selftest(CommonArgs),
}

/// Parses the process arguments, runs the command, and returns the exit
/// code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Coverage(args) => cmd_coverage(args),
        Command::QuantileTable(args) => cmd_quantile_table(args),
        Command::Selftest(args) => cmd_selftest(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::Domain(_) => 2,
                _ => 1,
            }
        }
    }
}

fn print_summaries(points: &[PointResult]) {
    for point in points {
        for s in &point.summaries {
            println!(
                "{:>14}  {}={:<8}  mean final regret {:.3} +/- {:.3} (sd {:.3}, R = {})",
                s.policy, s.param_name, s.param_value, s.mean, s.ci95, s.sd, s.replications
            );
        }
    }
}

fn cmd_simulate(args: &CommonArgs) -> Result<i32> {
    let config = args.load_config()?;
    let out = args.out_dir()?;
    let points = vec![harness::run_replications(&config)?];
    report::write_results_csv(&out.join("results.csv"), config.sim.horizon, &points)?;
    report::write_summary_json(&out.join("summary.json"), &config, &points)?;
    let mut written = vec!["results.csv", "summary.json"];
    if config.sim.traces {
        report::write_traces_csv(&out.join("traces.csv"), &points)?;
        written.push("traces.csv");
    }
    print_summaries(&points);
    println!("wrote {} in {}", written.join(", "), out.display());
    Ok(0)
}

fn cmd_sweep(args: &CommonArgs) -> Result<i32> {
    let config = args.load_config()?;
    let sweep = config
        .sweep
        .clone()
        .ok_or_else(|| Error::Config("sweep: missing [sweep] section".into()))?;
    let out = args.out_dir()?;
    let points = harness::sweep(&config, sweep.axis, &sweep.grid)?;
    report::write_results_csv(&out.join("results.csv"), config.sim.horizon, &points)?;
    report::write_summary_json(&out.join("summary.json"), &config, &points)?;
    print_summaries(&points);
    println!("wrote results.csv, summary.json in {}", out.display());
    Ok(0)
}

fn cmd_coverage(args: &CommonArgs) -> Result<i32> {
    let config = args.load_config()?;
    let grid = config.coverage.clone().unwrap_or_default();
    grid.validate()?;
    let out = args.out_dir()?;

    let mut rows = Vec::new();
    let mut all_pass = true;
    for &n in &grid.n {
        for &n_off in &grid.offline {
            for &rho in &grid.rho {
                for &delta in &grid.delta {
                    let spec = crate::env::GaussianArmSpec::new(
                        grid.mu,
                        grid.mu_tilde,
                        grid.sigma,
                        grid.sigma_tilde,
                        rho,
                    )?;
                    let miscoverage = harness::coverage_experiment(
                        &spec,
                        n,
                        n_off,
                        delta,
                        grid.replications,
                        config.sim.seed,
                    )?;
                    let row = CoverageRow {
                        n,
                        n_off,
                        rho,
                        delta,
                        replications: grid.replications,
                        miscoverage,
                        threshold: coverage_threshold(delta, grid.replications),
                    };
                    all_pass &= row.pass();
                    println!(
                        "n={n} N={n_off} rho={rho} delta={delta}: miscoverage {miscoverage:.4} \
                         (threshold {:.4}) {}",
                        row.threshold,
                        if row.pass() { "ok" } else { "BREACH" }
                    );
                    rows.push(row);
                }
            }
        }
    }
    report::write_coverage_csv(&out.join("coverage.csv"), &rows)?;
    println!("wrote coverage.csv in {}", out.display());
    Ok(if all_pass { 0 } else { 1 })
}

fn cmd_quantile_table(args: &CommonArgs) -> Result<i32> {
    let config = args.load_config()?;
    let table = config.quantile_table.clone().unwrap_or_default();
    table.validate()?;
    let out = args.out_dir()?;

    let mut rows = Vec::new();
    for &s in &table.s {
        let d = match table.d {
            Some(d) => d,
            None => (s.ln().floor() as u64).max(2),
        };
        let quantile = TDist::new(d)?.upper_quantile(significance_level(s))?;
        let bound = t_quantile_upper_bound(d, s)?;
        rows.push(QuantileRow {
            s,
            d,
            bound,
            quantile,
        });
    }
    report::write_quantile_table_csv(&out.join("quantile_table.csv"), &rows)?;
    if let Some(bad) = rows.iter().find(|r| r.gap() < 0.0) {
        return Err(Error::Protocol(format!(
            "quantile bound violated at s = {}, d = {}: gap {}",
            bad.s,
            bad.d,
            bad.gap()
        )));
    }
    println!(
        "{} points, min gap {:.4}; wrote quantile_table.csv in {}",
        rows.len(),
        rows.iter()
            .map(QuantileRow::gap)
            .fold(f64::INFINITY, f64::min),
        out.display()
    );
    Ok(0)
}

fn cmd_selftest(args: &CommonArgs) -> Result<i32> {
    let config = args.load_config()?;
    let reports = crate::selftest::run_all(config.sim.seed)?;
    let mut all_pass = true;
    for report in &reports {
        println!("{}", report.line());
        all_pass &= report.passed;
    }
    Ok(if all_pass { 0 } else { 1 })
}
