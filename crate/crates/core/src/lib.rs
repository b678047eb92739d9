//! Multi-armed bandit simulation with ML-generated surrogate rewards.
//!
//! In many deployments, a prediction model can score every unit — both
//! historical records and the units observed online — even though true
//! rewards only materialize for arms actually pulled. Treating those
//! predictions as *surrogate rewards* turns one reward stream per arm into
//! two correlated ones plus a static offline pool, and a UCB policy can
//! exploit the correlation to shrink its confidence intervals without
//! trusting the predictions' (possibly arbitrarily biased) level.
//!
//! The crate provides:
//!
//! * [`estimator`] — per-arm sufficient statistics, the ML-assisted mean
//!   estimator with its shrinkage coefficient and exact variance
//!   machinery, and the resulting UCB index;
//! * [`policy`] — that index plus two baselines (known-variance UCB and a
//!   variance-adaptive UCB) behind one selection contract;
//! * [`env`](mod@env) — bivariate-Gaussian and feature-based reward
//!   processes with offline surrogate pools;
//! * [`predictor`] — linear, regression-tree, and MLP reward predictors
//!   for the feature environment;
//! * [`student_t`] / [`special`] — the Student-t CDF/quantile kernel the
//!   indices are built on;
//! * [`harness`] — seeded, parallel episode replication, parameter sweeps,
//!   and the confidence-bound coverage experiment;
//! * [`config`] / [`report`] / [`cli`] — TOML experiment configs, CSV/JSON
//!   outputs, and the `mla-bandit` command-line tool.
//!
//! Start with the `examples/` directory: each file is a runnable
//! walkthrough of one capability (head-to-head regret comparison, sweeps,
//! coverage, predictor quality, ...). Everything is reproducible: all
//! randomness flows from one base seed through counter-based streams, so a
//! given configuration yields bit-identical results within a build.

pub mod cli;
pub mod config;
pub mod env;
pub mod error;
pub mod estimator;
pub mod harness;
pub mod policy;
pub mod predictor;
pub mod report;
pub mod rng;
pub mod selftest;
pub mod special;
pub mod student_t;

pub use config::{SimulationConfig, SweepAxis};
pub use env::{
    build_offline_pool, feature_reward, feature_true_mean, sample_bivariate, Environment,
    FeatureArmSpec, FeatureSetup, GaussianArmSpec, OfflinePool,
};
pub use error::{Error, Result};
pub use estimator::{mla_ucb_index, ols_intercept, ArmStatistics, MlaEstimate};
pub use harness::{
    coverage_experiment, coverage_threshold, run_replications, sweep, PointResult, PointSummary,
    RegretTrace, RunSpec,
};
pub use policy::{chk_index, classical_index, PolicyKind, PolicyState};
pub use predictor::{empirical_rho2, fit, FittedPredictor, PredictorKind, TrainingSet};
pub use rng::{stream_id, RandomStream, StreamRole};
pub use student_t::{significance_level, t_quantile_upper_bound, TDist};
