//! Episode runner and replication aggregator.
//!
//! An episode owns its policy state and its random streams; replications
//! are independent and run in parallel, with results reduced in replication
//! order so output is a pure function of the configuration. Regret is
//! pseudo-regret, computed from true arm means that never reach the
//! policies.

use crate::config::{require_unique_optimum, SimulationConfig, SweepAxis};
use crate::env::{build_offline_pool, Environment, GaussianArmSpec};
use crate::error::{Error, Result};
use crate::estimator::ArmStatistics;
use crate::policy::{PolicyKind, PolicyState};
use crate::rng::{stream_id, RandomStream, StreamRole};
use crate::student_t::TDist;
use rayon::prelude::*;
use serde::Serialize;

/// Everything one experiment point needs: a built environment plus the
/// episode shape.
#[derive(Debug, Clone)]
pub struct RunSpec {
    pub env: Environment,
    pub offline_sizes: Vec<u64>,
    pub horizon: u64,
    pub replications: u32,
    pub base_seed: u64,
}

impl RunSpec {
    /// Builds the run inputs from a validated configuration. Feature
    /// environments fit their predictors here, once.
    pub fn from_config(config: &SimulationConfig) -> Result<Self> {
        let env = config.build_environment()?;
        require_unique_optimum(&env.true_means())?;
        Ok(Self {
            env,
            offline_sizes: config.offline_sizes()?,
            horizon: config.sim.horizon,
            replications: config.sim.replications,
            base_seed: config.sim.seed,
        })
    }

    fn check_policy(&self, policy: PolicyKind) -> Result<()> {
        let k = self.env.n_arms() as u64;
        let init = policy.init_pulls() * k;
        if self.horizon <= init {
            return Err(Error::Config(format!(
                "sim.horizon: T < {}K: horizon {} must exceed the {init} initialization \
                 pulls of {} with K = {k}",
                policy.init_pulls(),
                self.horizon,
                policy.name()
            )));
        }
        if policy == PolicyKind::ClassicalUcb && self.env.known_sigmas().is_none() {
            return Err(Error::Config(
                "classical_ucb needs known sigmas, which this environment does not provide".into(),
            ));
        }
        Ok(())
    }

    /// Runs one replication of one policy.
    pub fn run_episode(&self, policy: PolicyKind, rep: u64) -> Result<RegretTrace> {
        self.check_policy(policy)?;
        let means = self.env.true_means();
        require_unique_optimum(&means)?;
        let mu_star = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);

        let mut env_stream =
            RandomStream::new(self.base_seed, stream_id(rep, StreamRole::Environment));
        let mut pool_stream =
            RandomStream::new(self.base_seed, stream_id(rep, StreamRole::OfflinePool));

        let mut state = PolicyState::new(policy, means.len(), self.env.known_sigmas())?;
        if policy.uses_surrogates() {
            let pool = build_offline_pool(&self.env, &self.offline_sizes, &mut pool_stream)?;
            for k in 0..means.len() {
                state.ingest_offline(k, pool.arm(k));
            }
        }

        let mut arms = Vec::with_capacity(self.horizon as usize);
        let mut cum_regret = Vec::with_capacity(self.horizon as usize);
        let mut regret = 0.0;
        for _ in 0..self.horizon {
            let arm = state.select_arm()?;
            let (r, rhat) = self.env.pull(arm, &mut env_stream);
            state.record(arm, r, Some(rhat))?;
            regret += mu_star - means[arm];
            arms.push(arm as u32);
            cum_regret.push(regret);
        }
        Ok(RegretTrace {
            policy,
            rep,
            base_seed: self.base_seed,
            arms,
            cum_regret,
        })
    }

    /// Runs all replications of one policy in parallel. Traces come back
    /// ordered by replication id.
    pub fn run_policy(&self, policy: PolicyKind) -> Result<Vec<RegretTrace>> {
        self.check_policy(policy)?;
        (0..self.replications as u64)
            .into_par_iter()
            .map(|rep| self.run_episode(policy, rep))
            .collect()
    }
}

/// Per-step cumulative pseudo-regret of one replication.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretTrace {
    pub policy: PolicyKind,
    pub rep: u64,
    pub base_seed: u64,
    pub arms: Vec<u32>,
    pub cum_regret: Vec<f64>,
}

impl RegretTrace {
    pub fn final_regret(&self) -> f64 {
        self.cum_regret.last().copied().unwrap_or(0.0)
    }
}

/// Cross-replication summary of final regret at one experiment point.
#[derive(Debug, Clone, Serialize)]
pub struct PointSummary {
    pub policy: String,
    pub param_name: String,
    pub param_value: f64,
    pub mean: f64,
    pub sd: f64,
    pub ci95: f64,
    pub replications: u32,
}

impl PointSummary {
    /// 95% normal confidence interval as (low, high).
    pub fn ci(&self) -> (f64, f64) {
        (self.mean - self.ci95, self.mean + self.ci95)
    }
}

/// Mean, sample standard deviation, and 1.96 sd/sqrt(R) half-width.
pub fn summarize(
    policy: PolicyKind,
    param_name: &str,
    param_value: f64,
    finals: &[f64],
) -> PointSummary {
    let n = finals.len();
    let mean = if n == 0 {
        0.0
    } else {
        finals.iter().sum::<f64>() / n as f64
    };
    let sd = if n < 2 {
        0.0
    } else {
        (finals.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n as f64 - 1.0)).sqrt()
    };
    let ci95 = if n == 0 {
        0.0
    } else {
        1.96 * sd / (n as f64).sqrt()
    };
    PointSummary {
        policy: policy.name().to_string(),
        param_name: param_name.to_string(),
        param_value,
        mean,
        sd,
        ci95,
        replications: n as u32,
    }
}

/// Result of one experiment point: summaries plus raw traces per policy.
#[derive(Debug)]
pub struct PointResult {
    pub param_name: String,
    pub param_value: f64,
    pub summaries: Vec<PointSummary>,
    pub traces: Vec<RegretTrace>,
}

/// Runs every configured policy at the configuration's single point.
pub fn run_replications(config: &SimulationConfig) -> Result<PointResult> {
    run_point(config, "none", 0.0)
}

fn run_point(config: &SimulationConfig, param_name: &str, param_value: f64) -> Result<PointResult> {
    let spec = RunSpec::from_config(config)?;
    let mut summaries = Vec::new();
    let mut traces = Vec::new();
    for &policy in &config.sim.policies {
        let mut policy_traces = spec.run_policy(policy)?;
        let finals: Vec<f64> = policy_traces
            .iter()
            .map(RegretTrace::final_regret)
            .collect();
        summaries.push(summarize(policy, param_name, param_value, &finals));
        traces.append(&mut policy_traces);
    }
    Ok(PointResult {
        param_name: param_name.to_string(),
        param_value,
        summaries,
        traces,
    })
}

/// Runs every configured policy at each grid point of the sweep axis.
pub fn sweep(config: &SimulationConfig, axis: SweepAxis, grid: &[f64]) -> Result<Vec<PointResult>> {
    if grid.is_empty() {
        return Err(Error::Config("sweep.grid must not be empty".into()));
    }
    grid.iter()
        .map(|&value| {
            let point = config.at_sweep_point(axis, value)?;
            run_point(&point, axis.name(), value)
        })
        .collect()
}

/// One point of the coverage experiment: draws `n` online pairs and
/// `n_off` offline surrogates per replication, forms the upper confidence
/// bound at significance `delta`, and reports the fraction of replications
/// whose bound fell below the true mean.
pub fn coverage_experiment(
    spec: &GaussianArmSpec,
    n: u64,
    n_off: u64,
    delta: f64,
    replications: u64,
    base_seed: u64,
) -> Result<f64> {
    if n < 4 {
        return Err(Error::Config(format!("coverage needs n >= 4, got {n}")));
    }
    if replications < 1000 {
        return Err(Error::Config(format!(
            "coverage needs at least 1000 replications, got {replications}"
        )));
    }
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::Config(format!(
            "coverage needs 0 < delta < 1/2, got {delta}"
        )));
    }
    spec.validate()?;
    let quantile = TDist::new(n - 2)?.upper_quantile(delta)?;

    let misses: u64 = (0..replications)
        .into_par_iter()
        .map(|rep| {
            let mut stream = RandomStream::new(base_seed, stream_id(rep, StreamRole::Environment));
            let mut stats = ArmStatistics::new();
            for _ in 0..n {
                let (r, rhat) = spec.sample(&mut stream);
                stats.observe(r, rhat);
            }
            stats.ingest_offline((0..n_off).map(|_| spec.sample_surrogate(&mut stream)));
            // Zero surrogate variance has probability zero here.
            let estimate = stats.estimate().expect("continuous draws");
            let bound = estimate.mla_mean + quantile * estimate.standard_error_width(n, n_off);
            u64::from(spec.mu > bound)
        })
        .sum();
    Ok(misses as f64 / replications as f64)
}

/// Binomial pass threshold for an observed miscoverage rate:
/// 2 delta + 3 sqrt(2 delta (1 - 2 delta) / reps).
pub fn coverage_threshold(delta: f64, replications: u64) -> f64 {
    2.0 * delta + 3.0 * (2.0 * delta * (1.0 - 2.0 * delta) / replications as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::EnvKind;

    fn tiny_config() -> SimulationConfig {
        SimulationConfig::load(
            None,
            &[
                "sim.horizon=120".into(),
                "sim.replications=8".into(),
                "env.gaussian.mu=[1.0, 0.0]".into(),
                "env.gaussian.mu_tilde=[0.0, 1.0]".into(),
            ],
            Some(11),
        )
        .unwrap()
    }

    #[test]
    fn single_arm_has_zero_regret() {
        let config = SimulationConfig::load(
            None,
            &[
                "sim.horizon=50".into(),
                "env.gaussian.mu=[0.3]".into(),
                "env.gaussian.mu_tilde=[0.0]".into(),
            ],
            None,
        )
        .unwrap();
        let spec = RunSpec::from_config(&config).unwrap();
        let trace = spec.run_episode(PolicyKind::MlaUcb, 0).unwrap();
        assert_eq!(trace.final_regret(), 0.0);
        assert!(trace.cum_regret.iter().all(|&r| r == 0.0));
    }

    #[test]
    fn huge_gap_costs_exactly_the_initialization() {
        // Two arms, enormous gap, negligible noise: regret is 4 pulls of
        // the bad arm in essentially every replication.
        let config = SimulationConfig::load(
            None,
            &[
                "sim.horizon=200".into(),
                "sim.replications=100".into(),
                "sim.offline_size=10".into(),
                "env.gaussian.mu=[100.0, 0.0]".into(),
                "env.gaussian.mu_tilde=[0.0, 0.0]".into(),
                "env.gaussian.sigma=0.001".into(),
                "env.gaussian.sigma_tilde=0.001".into(),
                "env.gaussian.rho=0.0".into(),
            ],
            Some(5),
        )
        .unwrap();
        let spec = RunSpec::from_config(&config).unwrap();
        let traces = spec.run_policy(PolicyKind::MlaUcb).unwrap();
        let exact = traces
            .iter()
            .filter(|t| (t.final_regret() - 400.0).abs() < 1e-9)
            .count();
        assert!(
            exact >= 99,
            "only {exact}/100 runs stopped at initialization cost"
        );
    }

    #[test]
    fn episodes_replay_bit_identically() {
        let config = tiny_config();
        let spec = RunSpec::from_config(&config).unwrap();
        let a = spec.run_episode(PolicyKind::MlaUcb, 3).unwrap();
        let b = spec.run_episode(PolicyKind::MlaUcb, 3).unwrap();
        assert_eq!(a, b);
        // Distinct replications differ.
        let c = spec.run_episode(PolicyKind::MlaUcb, 4).unwrap();
        assert_ne!(a.cum_regret, c.cum_regret);
    }

    #[test]
    fn regret_identity_and_monotonicity() {
        let config = tiny_config();
        let spec = RunSpec::from_config(&config).unwrap();
        let means = spec.env.true_means();
        let mu_star = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for policy in [
            PolicyKind::MlaUcb,
            PolicyKind::ChkUcb,
            PolicyKind::ClassicalUcb,
        ] {
            let trace = spec.run_episode(policy, 1).unwrap();
            // Nondecreasing cumulative regret.
            for w in trace.cum_regret.windows(2) {
                assert!(w[1] >= w[0] - 1e-12);
            }
            // Reg_T equals sum over arms of pulls times gap.
            let mut by_arm = vec![0u64; means.len()];
            for &a in &trace.arms {
                by_arm[a as usize] += 1;
            }
            let expect: f64 = by_arm
                .iter()
                .zip(&means)
                .map(|(&pulls, &mu)| pulls as f64 * (mu_star - mu))
                .sum();
            assert!((trace.final_regret() - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn summary_statistics() {
        let s = summarize(PolicyKind::ChkUcb, "none", 0.0, &[2.0]);
        assert_eq!(s.sd, 0.0);
        assert_eq!(s.ci95, 0.0);
        let s = summarize(PolicyKind::ChkUcb, "none", 0.0, &[1.0, 3.0]);
        assert_eq!(s.mean, 2.0);
        assert!((s.sd - 2.0f64.sqrt()).abs() < 1e-12);
        assert!((s.ci95 - 1.96 * 2.0f64.sqrt() / 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn ci_shrinks_with_replications() {
        // Nested comparison: the half-width over the first R replications
        // versus over all 2R; the ratio should be about sqrt(2).
        let mut config = tiny_config();
        config.sim.replications = 100;
        let spec = RunSpec::from_config(&config).unwrap();
        let finals: Vec<f64> = spec
            .run_policy(PolicyKind::ChkUcb)
            .unwrap()
            .iter()
            .map(RegretTrace::final_regret)
            .collect();
        let half = summarize(PolicyKind::ChkUcb, "none", 0.0, &finals[..50]);
        let full = summarize(PolicyKind::ChkUcb, "none", 0.0, &finals);
        let shrink = half.ci95 / full.ci95;
        assert!(
            (shrink - 2f64.sqrt()).abs() <= 0.2 * 2f64.sqrt(),
            "shrink factor {shrink}"
        );
    }

    #[test]
    fn sweep_runs_each_point() {
        let mut config = tiny_config();
        config.sim.replications = 4;
        config.sim.horizon = 60;
        let results = sweep(&config, SweepAxis::N, &[0.0, 50.0]).unwrap();
        assert_eq!(results.len(), 2);
        assert_eq!(results[0].param_name, "N");
        assert_eq!(results[0].param_value, 0.0);
        assert_eq!(results[1].param_value, 50.0);
        for point in &results {
            assert_eq!(point.summaries.len(), 2);
        }
    }

    #[test]
    fn feature_environment_episode_runs() {
        let mut config = SimulationConfig::default();
        config.env.kind = EnvKind::Feature;
        config.env.gaussian = None;
        config.env.feature = Some(crate::env::FeatureSetup {
            arms: 3,
            train_size: 300,
            eval_size: 300,
            ..Default::default()
        });
        config.sim.horizon = 80;
        config.sim.replications = 2;
        config.sim.offline_size = Some(50);
        config.validate().unwrap();
        let result = run_replications(&config).unwrap();
        assert_eq!(result.summaries.len(), 2);
        for trace in &result.traces {
            assert_eq!(trace.cum_regret.len(), 80);
        }
    }

    #[test]
    fn coverage_guardrails() {
        let spec = GaussianArmSpec::new(0.0, 0.0, 1.0, 1.0, 0.5).unwrap();
        assert!(coverage_experiment(&spec, 3, 10, 0.05, 2000, 0).is_err());
        assert!(coverage_experiment(&spec, 10, 10, 0.05, 10, 0).is_err());
        assert!(coverage_experiment(&spec, 10, 10, 0.6, 2000, 0).is_err());
    }

    #[test]
    fn coverage_holds_at_a_cheap_point() {
        let spec = GaussianArmSpec::new(0.0, 5.0, 1.0, 2.0, 0.7).unwrap();
        let delta = 0.05;
        let reps = 4000;
        let rate = coverage_experiment(&spec, 10, 100, delta, reps, 42).unwrap();
        assert!(
            rate <= coverage_threshold(delta, reps),
            "miscoverage {rate} above threshold"
        );
    }

    #[test]
    fn coverage_without_offline_data_is_a_t_interval() {
        // rho = 0 and N = 0: the bound degrades to a two-term t-interval
        // on the rewards alone and must still cover.
        let spec = GaussianArmSpec::new(1.0, 0.0, 2.0, 1.0, 0.0).unwrap();
        let delta = 0.05;
        let reps = 4000;
        let rate = coverage_experiment(&spec, 8, 0, delta, reps, 44).unwrap();
        assert!(
            rate <= coverage_threshold(delta, reps),
            "miscoverage {rate} above threshold"
        );
    }

    #[test]
    fn coverage_is_not_vacuous() {
        // Wide significance, strong correlation, big pool: the bound must
        // still miss a visible fraction of the time.
        let spec = GaussianArmSpec::new(0.0, 5.0, 1.0, 2.0, 0.9).unwrap();
        let rate = coverage_experiment(&spec, 50, 10_000, 0.25, 4000, 43).unwrap();
        assert!(rate >= 0.02, "suspiciously low miscoverage {rate}");
        assert!(rate <= coverage_threshold(0.25, 4000));
    }
}
