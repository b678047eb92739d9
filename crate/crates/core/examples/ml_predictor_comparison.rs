//! Surrogates from actual fitted models instead of a Gaussian generator.
//!
//! Rewards follow sin(w1 x1^2 + w2 x2^2) + noise with latent features; one
//! predictor per arm is fitted on pre-episode data and its predictions
//! serve as surrogate rewards. Compares predictor families by held-out
//! fit quality and by the regret they buy the assisted policy.
//!
//! Run with: cargo run --release --example ml_predictor_comparison

use mla_bandit::harness::run_replications;
use mla_bandit::{FeatureSetup, PredictorKind, SimulationConfig};

fn main() -> mla_bandit::Result<()> {
    let seed = 31;
    let replications = 40;

    println!("feature environment: 5 arms, noise 0.2, horizon 1000, N = 1000/arm");
    println!("({replications} replications per predictor family)\n");
    println!(
        "{:>8} | {:>9} | {:>14} | {:>14}",
        "model", "avg rho^2", "mla_ucb", "chk_ucb"
    );
    println!("{:-<8}-+-{:-<9}-+-{:-<14}-+-{:-<14}", "", "", "", "");

    for kind in [
        PredictorKind::Linear,
        PredictorKind::Tree,
        PredictorKind::Mlp,
    ] {
        let setup = FeatureSetup {
            predictor: kind,
            ..Default::default()
        };
        let (_, diagnostics) = setup.build(seed)?;

        let config = SimulationConfig::load(
            None,
            &[
                "env.kind=\"feature\"".into(),
                format!("env.feature.predictor=\"{}\"", kind.name()),
                "sim.offline_size=1000".into(),
                format!("sim.replications={replications}"),
            ],
            Some(seed),
        )?;
        let result = run_replications(&config)?;
        let cell = |name: &str| {
            result
                .summaries
                .iter()
                .find(|s| s.policy == name)
                .map(|s| format!("{:6.1} ± {:4.1}", s.mean, s.ci95))
                .unwrap_or_default()
        };
        println!(
            "{:>8} | {:>9.3} | {:>14} | {:>14}",
            kind.name(),
            diagnostics.avg_rho2,
            cell("mla_ucb"),
            cell("chk_ucb")
        );
    }
    println!("\n(a useless predictor costs little: with rho^2 near 0 the assisted");
    println!(" policy tracks the baseline instead of trusting the predictions)");
    Ok(())
}
