//! Empirical coverage of the upper confidence bound.
//!
//! For each (n, N, rho, delta) the bound mean + q_{n-2}(delta) *
//! (sqrt(sigma_r2/(n+N)) + sqrt(z sigma_eps2/n)) should exceed the true
//! mean with probability at least 1 - 2 delta. Reports the observed
//! miscoverage rate against the binomial pass threshold.
//!
//! Run with: cargo run --release --example coverage_check

use mla_bandit::harness::{coverage_experiment, coverage_threshold};
use mla_bandit::GaussianArmSpec;

fn main() -> mla_bandit::Result<()> {
    let replications = 10_000;
    println!("{replications} replications per point; threshold = 2d + 3 binomial SE\n");
    println!(
        "{:>4} {:>6} {:>5} {:>6} | {:>11} {:>9}  verdict",
        "n", "N", "rho", "delta", "miscoverage", "threshold"
    );
    for &(n, n_off) in &[(10u64, 100u64), (20, 10_000)] {
        for &rho in &[0.0, 0.7, 0.95] {
            for &delta in &[0.01, 0.05] {
                let spec = GaussianArmSpec::new(0.0, 2.0, 1.0, 1.5, rho)?;
                let rate = coverage_experiment(&spec, n, n_off, delta, replications, 808)?;
                let threshold = coverage_threshold(delta, replications);
                println!(
                    "{:>4} {:>6} {:>5} {:>6} | {:>11.4} {:>9.4}  {}",
                    n,
                    n_off,
                    rho,
                    delta,
                    rate,
                    threshold,
                    if rate <= threshold { "ok" } else { "BREACH" }
                );
            }
        }
    }
    Ok(())
}
