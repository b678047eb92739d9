//! Regret as a function of the reward gap.
//!
//! Sweeps the best arm's mean (all other arms stay at zero). Small gaps
//! are hard for everyone; large gaps are resolved within initialization.
//!
//! Run with: cargo run --release --example gap_sweep

use mla_bandit::harness::sweep;
use mla_bandit::{SimulationConfig, SweepAxis};

fn main() -> mla_bandit::Result<()> {
    let config = SimulationConfig::load(None, &["sim.replications=60".into()], Some(13))?;
    let grid = [0.1, 0.25, 0.5, 1.0, 2.0];
    println!("gap sweep at rho^2 = 0.5, N = 100 (60 replications per point)\n");
    println!("{:>6} | {:>14} | {:>14}", "gap", "mla_ucb", "chk_ucb");
    println!("{:-<6}-+-{:-<14}-+-{:-<14}", "", "", "");
    for point in sweep(&config, SweepAxis::Delta, &grid)? {
        let cell = |name: &str| {
            point
                .summaries
                .iter()
                .find(|s| s.policy == name)
                .map(|s| format!("{:6.1} ± {:4.1}", s.mean, s.ci95))
                .unwrap_or_default()
        };
        println!(
            "{:>6} | {:>14} | {:>14}",
            point.param_value,
            cell("mla_ucb"),
            cell("chk_ucb")
        );
    }
    Ok(())
}
