//! How much offline data does the assisted policy need?
//!
//! Sweeps the per-arm offline pool size N and reports mean final regret.
//! Regret drops steeply at first and flattens once the pool stops being
//! the bottleneck (around N = 1000 in this regime).
//!
//! Run with: cargo run --release --example offline_size_sweep

use mla_bandit::harness::sweep;
use mla_bandit::{SimulationConfig, SweepAxis};

fn main() -> mla_bandit::Result<()> {
    let config = SimulationConfig::load(None, &["sim.replications=60".into()], Some(11))?;
    let grid = [0.0, 10.0, 100.0, 1000.0, 10_000.0];
    println!("offline pool sweep at rho^2 = 0.5 (60 replications per point)\n");
    println!("{:>8} | {:>14} | {:>14}", "N", "mla_ucb", "chk_ucb");
    println!("{:-<8}-+-{:-<14}-+-{:-<14}", "", "", "");
    for point in sweep(&config, SweepAxis::N, &grid)? {
        let cell = |name: &str| {
            point
                .summaries
                .iter()
                .find(|s| s.policy == name)
                .map(|s| format!("{:6.1} ± {:4.1}", s.mean, s.ci95))
                .unwrap_or_default()
        };
        println!(
            "{:>8} | {:>14} | {:>14}",
            point.param_value,
            cell("mla_ucb"),
            cell("chk_ucb")
        );
    }
    println!("\n(the unassisted baseline ignores N, so its column is flat up to noise)");
    Ok(())
}
