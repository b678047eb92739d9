//! Built-in property suites: exact distributional facts about the
//! estimator and the quantile bound, checked by Monte Carlo and by an
//! independent least-squares oracle. The `selftest` subcommand runs these
//! and fails nonzero if any property is violated; the acceptance tests
//! reuse them directly.

use crate::env::GaussianArmSpec;
use crate::error::Result;
use crate::estimator::{ols_intercept, ArmStatistics};
use crate::rng::{stream_id, RandomStream, StreamRole};
use crate::student_t::{significance_level, t_quantile_upper_bound, TDist};
use rayon::prelude::*;

/// Outcome of one property suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteReport {
    pub fn line(&self) -> String {
        format!(
            "{}: {} ({})",
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

/// Runs every suite.
pub fn run_all(base_seed: u64) -> Result<Vec<SuiteReport>> {
    Ok(vec![
        suite_estimator_matches_ols(base_seed)?,
        suite_estimator_moments(base_seed)?,
        suite_quantile_bound(base_seed)?,
    ])
}

/// The incremental-sums estimator must agree with the intercept of the
/// least-squares fit recomputed from raw samples, over random instances
/// spanning n in [3, 50] and offline sizes in [0, 200].
pub fn suite_estimator_matches_ols(base_seed: u64) -> Result<SuiteReport> {
    let mut stream = RandomStream::new(base_seed, stream_id(0, StreamRole::Environment));
    let mut max_rel = 0.0f64;
    for _ in 0..1000 {
        let n = 3 + stream.index(48) as u64;
        let n_off = stream.index(201) as u64;
        let spec = GaussianArmSpec::new(
            stream.uniform(-5.0, 5.0),
            stream.uniform(-5.0, 5.0),
            stream.uniform(0.1, 3.0),
            stream.uniform(0.1, 3.0),
            stream.uniform(-0.99, 0.99),
        )?;
        let mut stats = ArmStatistics::new();
        let mut pairs = Vec::with_capacity(n as usize);
        for _ in 0..n {
            let (r, rhat) = spec.sample(&mut stream);
            stats.observe(r, rhat);
            pairs.push((r, rhat));
        }
        let offline: Vec<f64> = (0..n_off)
            .map(|_| spec.sample_surrogate(&mut stream))
            .collect();
        stats.ingest_offline(offline.iter().copied());

        let estimate = stats.estimate()?;
        let oracle = ols_intercept(&pairs, &offline)?;
        let rel = (estimate.mla_mean - oracle).abs() / (1.0 + oracle.abs());
        max_rel = max_rel.max(rel);
    }
    Ok(SuiteReport {
        name: "estimator-matches-ols-intercept",
        passed: max_rel <= 1e-8,
        detail: format!("max relative deviation {max_rel:.3e} over 1000 instances"),
    })
}

/// Exact finite-sample moments of the estimator at n = 20, N = 100,
/// rho = 0.8, sigma = 1: the Monte Carlo mean must sit within 4 standard
/// errors of the true mean, and the Monte Carlo variance within 5 standard
/// errors of
/// `rho^2 sigma^2/(n+N) + (1 + N/((n+N)(n-3))) (1-rho^2) sigma^2 / n`.
pub fn suite_estimator_moments(base_seed: u64) -> Result<SuiteReport> {
    let n = 20u64;
    let n_off = 100u64;
    let rho = 0.8;
    let sigma = 1.0;
    let mu = 0.7;
    // A deliberately biased surrogate mean; the estimator must not care.
    let spec = GaussianArmSpec::new(mu, -3.0, sigma, 1.7, rho)?;
    let datasets = 50_000u64;

    let estimates: Vec<f64> = (0..datasets)
        .into_par_iter()
        .map(|rep| {
            let mut stream = RandomStream::new(base_seed, stream_id(rep, StreamRole::OfflinePool));
            let mut stats = ArmStatistics::new();
            for _ in 0..n {
                let (r, rhat) = spec.sample(&mut stream);
                stats.observe(r, rhat);
            }
            stats.ingest_offline((0..n_off).map(|_| spec.sample_surrogate(&mut stream)));
            stats.estimate().expect("continuous draws").mla_mean
        })
        .collect();

    let m = datasets as f64;
    let mean = estimates.iter().sum::<f64>() / m;
    let var = estimates
        .iter()
        .map(|x| (x - mean) * (x - mean))
        .sum::<f64>()
        / (m - 1.0);
    let m4 = estimates.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / m;

    let se_mean = (var / m).sqrt();
    let mean_gap = (mean - mu).abs() / se_mean;

    let nf = n as f64;
    let nn = (n + n_off) as f64;
    let expected_z = 1.0 + n_off as f64 / (nn * (nf - 3.0));
    let target_var =
        rho * rho * sigma * sigma / nn + expected_z * (1.0 - rho * rho) * sigma * sigma / nf;
    let se_var = ((m4 - var * var * (m - 3.0) / (m - 1.0)) / m).sqrt();
    let var_gap = (var - target_var).abs() / se_var;

    Ok(SuiteReport {
        name: "estimator-finite-sample-moments",
        passed: mean_gap <= 4.0 && var_gap <= 5.0,
        detail: format!(
            "mean off by {mean_gap:.2} SE (limit 4); variance off by {var_gap:.2} SE (limit 5)"
        ),
    })
}

/// The closed-form bound sqrt(d (s^{2/(d-1)} - 1)) must dominate the exact
/// t-quantile at level 1/(2s sqrt(log s)) across the whole grid.
pub fn suite_quantile_bound(_base_seed: u64) -> Result<SuiteReport> {
    let mut min_gap = f64::INFINITY;
    let mut points = 0u32;
    for exp in 1..=6u32 {
        let s = 10f64.powi(exp as i32);
        let delta = significance_level(s);
        let mut dofs: Vec<u64> = (2..=20).collect();
        dofs.push((s.ln().floor() as u64).max(2));
        dofs.sort_unstable();
        dofs.dedup();
        for d in dofs {
            let quantile = TDist::new(d)?.upper_quantile(delta)?;
            let bound = t_quantile_upper_bound(d, s)?;
            min_gap = min_gap.min(bound - quantile);
            points += 1;
        }
    }
    Ok(SuiteReport {
        name: "quantile-bound-domination",
        passed: min_gap >= 0.0,
        detail: format!("min gap {min_gap:.4} over {points} grid points"),
    })
}
