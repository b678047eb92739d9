//! Regret as a function of prediction quality.
//!
//! Sweeps the squared correlation between true and surrogate rewards with
//! a large offline pool (N = 2000). Mean final regret decays roughly
//! linearly in rho^2.
//!
//! Run with: cargo run --release --example correlation_sweep

use mla_bandit::harness::sweep;
use mla_bandit::{SimulationConfig, SweepAxis};

fn main() -> mla_bandit::Result<()> {
    let config = SimulationConfig::load(
        None,
        &["sim.replications=60".into(), "sim.offline_size=2000".into()],
        Some(12),
    )?;
    let grid = [0.0, 0.1, 0.25, 0.5, 0.75, 0.9];
    println!("correlation sweep at N = 2000 (60 replications per point)\n");
    println!("{:>6} | {:>14} | {:>14}", "rho^2", "mla_ucb", "chk_ucb");
    println!("{:-<6}-+-{:-<14}-+-{:-<14}", "", "", "");
    for point in sweep(&config, SweepAxis::Rho2, &grid)? {
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
