//! Walkthrough of the ML-assisted mean estimator on a single arm.
//!
//! Draws correlated (reward, surrogate) pairs plus an offline surrogate
//! pool, prints every derived quantity, then measures the variance
//! reduction against the plain sample mean over many replications.
//!
//! Run with: cargo run --example mean_estimator_basics

use mla_bandit::{ArmStatistics, GaussianArmSpec, RandomStream};

fn main() -> mla_bandit::Result<()> {
    // A biased surrogate: its mean is far off, but it correlates with the
    // true reward (rho = 0.8).
    let spec = GaussianArmSpec::new(1.0, -2.0, 1.0, 1.5, 0.8)?;
    let n_online = 20;
    let n_offline = 200;

    let mut stream = RandomStream::new(7, 0);
    let mut stats = ArmStatistics::new();
    for _ in 0..n_online {
        let (r, rhat) = spec.sample(&mut stream);
        stats.observe(r, rhat);
    }
    stats.ingest_offline((0..n_offline).map(|_| spec.sample_surrogate(&mut stream)));

    let estimate = stats.estimate()?;
    println!(
        "one dataset (n = {n_online}, N = {n_offline}, true mean {}):",
        spec.mu
    );
    println!("  plain sample mean      {:+.4}", stats.reward_mean());
    println!("  ml-assisted mean       {:+.4}", estimate.mla_mean);
    println!("  shrinkage lambda       {:+.4}", estimate.lambda);
    println!("  regression slope       {:+.4}", estimate.slope);
    println!("  inflation factor z     {:.4}", estimate.z);
    println!("  reward variance        {:.4}", estimate.sigma_r2);
    println!("  residual variance      {:.4}", estimate.sigma_eps2);
    println!(
        "  95% upper bound        {:+.4}",
        estimate.upper_bound(n_online, n_offline, 0.025)?
    );

    // Monte Carlo: the assisted estimator should cut the variance roughly
    // by the squared correlation when the pool is large.
    let reps = 20_000;
    let mut plain = Vec::with_capacity(reps);
    let mut assisted = Vec::with_capacity(reps);
    for rep in 0..reps {
        let mut stream = RandomStream::new(99, rep as u64);
        let mut stats = ArmStatistics::new();
        for _ in 0..n_online {
            let (r, rhat) = spec.sample(&mut stream);
            stats.observe(r, rhat);
        }
        stats.ingest_offline((0..n_offline).map(|_| spec.sample_surrogate(&mut stream)));
        plain.push(stats.reward_mean());
        assisted.push(stats.estimate()?.mla_mean);
    }
    let var = |xs: &[f64]| {
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
    };
    println!("\nover {reps} replications:");
    println!("  var(plain mean)        {:.5}", var(&plain));
    println!("  var(assisted mean)     {:.5}", var(&assisted));
    println!(
        "  reduction              {:.1}% (rho^2 = {:.0}%)",
        100.0 * (1.0 - var(&assisted) / var(&plain)),
        100.0 * spec.rho * spec.rho
    );
    Ok(())
}
