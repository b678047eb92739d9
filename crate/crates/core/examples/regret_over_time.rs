//! Average cumulative-regret curves over the episode.
//!
//! Prints the mean cumulative pseudo-regret of both policies at a grid of
//! time steps — the data behind a regret-over-time plot.
//!
//! Run with: cargo run --release --example regret_over_time

use mla_bandit::harness::RunSpec;
use mla_bandit::{PolicyKind, SimulationConfig};

fn main() -> mla_bandit::Result<()> {
    let config = SimulationConfig::load(None, &["sim.replications=60".into()], Some(5))?;
    let spec = RunSpec::from_config(&config)?;
    let horizon = config.sim.horizon as usize;
    let checkpoints: Vec<usize> = (1..=10).map(|i| i * horizon / 10).collect();

    println!("mean cumulative regret (rho^2 = 0.5, N = 100, 60 replications)\n");
    println!("{:>6} | {:>8} | {:>8}", "t", "mla_ucb", "chk_ucb");
    println!("{:-<6}-+-{:-<8}-+-{:-<8}", "", "", "");
    let mut curves = Vec::new();
    for policy in [PolicyKind::MlaUcb, PolicyKind::ChkUcb] {
        let traces = spec.run_policy(policy)?;
        let mean_at = |t: usize| {
            traces.iter().map(|tr| tr.cum_regret[t - 1]).sum::<f64>() / traces.len() as f64
        };
        curves.push(checkpoints.iter().map(|&t| mean_at(t)).collect::<Vec<_>>());
    }
    for (i, &t) in checkpoints.iter().enumerate() {
        println!("{:>6} | {:>8.1} | {:>8.1}", t, curves[0][i], curves[1][i]);
    }
    println!("\n(write full per-step traces with: mla-bandit simulate --set sim.traces=true)");
    Ok(())
}
