//! Arm-selection policies behind one contract: round-robin initialization,
//! then pull the arm with the largest index.
//!
//! Three index families are provided:
//!
//! * classical UCB for known reward variance, `mean + sigma sqrt(2 log t / n)`,
//!   one initial pull per arm;
//! * a variance-adaptive UCB for unknown variance,
//!   `mean + sd * sqrt(t^{2/(n-2)} - 1)` with the biased (1/n) sample
//!   variance, three initial pulls per arm;
//! * the ML-assisted UCB built on [`crate::estimator::mla_ucb_index`],
//!   four initial pulls per arm.
//!
//! Policies observe only (reward, surrogate) pairs; true arm means never
//! cross this boundary. Ties break toward the lowest arm index so that
//! replays are deterministic.

use crate::error::{Error, Result};
use crate::estimator::{mla_ucb_index, ArmStatistics};
use crate::student_t::significance_level;
use serde::{Deserialize, Serialize};

/// Which index family a policy uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyKind {
    /// Known-variance UCB.
    ClassicalUcb,
    /// Unknown-variance UCB with the conservative quantile bound
    /// (Cowan-Honda-Katehakis style index).
    ChkUcb,
    /// ML-assisted UCB using surrogate rewards.
    MlaUcb,
}

impl PolicyKind {
    /// Mandatory round-robin pulls per arm before index-based selection.
    pub fn init_pulls(self) -> u64 {
        match self {
            PolicyKind::ClassicalUcb => 1,
            PolicyKind::ChkUcb => 3,
            PolicyKind::MlaUcb => 4,
        }
    }

    /// Whether the policy consumes surrogate observations.
    pub fn uses_surrogates(self) -> bool {
        matches!(self, PolicyKind::MlaUcb)
    }

    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::ClassicalUcb => "classical_ucb",
            PolicyKind::ChkUcb => "chk_ucb",
            PolicyKind::MlaUcb => "mla_ucb",
        }
    }
}

impl std::fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical_ucb" => Ok(PolicyKind::ClassicalUcb),
            "chk_ucb" => Ok(PolicyKind::ChkUcb),
            "mla_ucb" => Ok(PolicyKind::MlaUcb),
            other => Err(Error::Config(format!(
                "unknown policy `{other}` (expected classical_ucb, chk_ucb, or mla_ucb)"
            ))),
        }
    }
}

/// One policy's view of an episode: per-arm statistics and the clock.
#[derive(Debug, Clone)]
pub struct PolicyState {
    kind: PolicyKind,
    arms: Vec<ArmStatistics>,
    known_sigmas: Option<Vec<f64>>,
    t: u64,
}

impl PolicyState {
    /// Creates a fresh state. The classical policy requires one known
    /// reward standard deviation per arm; the others ignore them.
    pub fn new(kind: PolicyKind, n_arms: usize, known_sigmas: Option<Vec<f64>>) -> Result<Self> {
        if n_arms == 0 {
            return Err(Error::Config("policy needs at least one arm".into()));
        }
        if kind == PolicyKind::ClassicalUcb {
            match &known_sigmas {
                Some(s) if s.len() == n_arms && s.iter().all(|v| *v > 0.0) => {}
                Some(s) if s.len() != n_arms => {
                    return Err(Error::Config(format!(
                        "classical_ucb needs one sigma per arm: got {} for {} arms",
                        s.len(),
                        n_arms
                    )));
                }
                _ => {
                    return Err(Error::Config(
                        "classical_ucb needs positive known sigmas".into(),
                    ));
                }
            }
        }
        Ok(Self {
            kind,
            arms: vec![ArmStatistics::new(); n_arms],
            known_sigmas,
            t: 1,
        })
    }

    pub fn kind(&self) -> PolicyKind {
        self.kind
    }

    pub fn n_arms(&self) -> usize {
        self.arms.len()
    }

    /// Current 1-based time step (1 + total pulls recorded).
    pub fn time_step(&self) -> u64 {
        self.t
    }

    pub fn arm(&self, k: usize) -> &ArmStatistics {
        &self.arms[k]
    }

    /// Loads an arm's offline surrogate pool. Only meaningful for the
    /// ML-assisted policy; harmless for the others.
    pub fn ingest_offline(&mut self, arm: usize, surrogates: &[f64]) {
        self.arms[arm].ingest_offline(surrogates.iter().copied());
    }

    /// Chooses the next arm: round-robin while any arm is below its
    /// initialization quota, arg-max of the index afterwards.
    pub fn select_arm(&self) -> Result<usize> {
        let k = self.arms.len() as u64;
        let init = self.kind.init_pulls();
        if self.t <= init * k {
            return Ok(((self.t - 1) % k) as usize);
        }
        let mut best = 0usize;
        let mut best_index = f64::NEG_INFINITY;
        for i in 0..self.arms.len() {
            let index = self.index(i)?;
            if index > best_index {
                best = i;
                best_index = index;
            }
        }
        Ok(best)
    }

    /// Index of arm `k` under this policy at the current time step.
    pub fn index(&self, k: usize) -> Result<f64> {
        let stats = &self.arms[k];
        match self.kind {
            PolicyKind::ClassicalUcb => {
                let sigmas = self
                    .known_sigmas
                    .as_ref()
                    .expect("validated at construction");
                classical_index(stats, sigmas[k], self.t)
            }
            PolicyKind::ChkUcb => chk_index(stats, self.t),
            PolicyKind::MlaUcb => match mla_ucb_index(stats, self.t) {
                // Constant online surrogates carry no signal; fall back to
                // a plain t-interval on the rewards for this step.
                Err(Error::DegenerateRegressor) => {
                    let estimate = stats.fallback_estimate()?;
                    estimate.ucb_index(
                        stats.pulls(),
                        stats.offline_count(),
                        significance_level(self.t as f64),
                    )
                }
                other => other,
            },
        }
    }

    /// Records the observation from pulling `arm`. The ML-assisted policy
    /// requires the surrogate; the baselines ignore it.
    pub fn record(&mut self, arm: usize, r: f64, rhat: Option<f64>) -> Result<()> {
        if arm >= self.arms.len() {
            return Err(Error::Protocol(format!(
                "arm {arm} out of range (K = {})",
                self.arms.len()
            )));
        }
        let rhat = match (self.kind.uses_surrogates(), rhat) {
            (true, Some(v)) => v,
            (true, None) => {
                return Err(Error::Protocol(
                    "mla_ucb requires a surrogate observation with every reward".into(),
                ));
            }
            (false, v) => v.unwrap_or(0.0),
        };
        self.arms[arm].observe(r, rhat);
        self.t += 1;
        Ok(())
    }
}

/// Unknown-variance UCB index: `mean + sd * sqrt(t^{2/(n-2)} - 1)` with the
/// biased (1/n) sample variance.
pub fn chk_index(stats: &ArmStatistics, t: u64) -> Result<f64> {
    let n = stats.pulls();
    if n < 3 {
        return Err(Error::InsufficientData(format!(
            "unknown-variance index needs at least 3 pulls, got {n}"
        )));
    }
    let tf = t as f64;
    let exponent = 2.0 / (n as f64 - 2.0);
    let bonus = (tf.powf(exponent) - 1.0).max(0.0).sqrt();
    Ok(stats.reward_mean() + stats.reward_variance_biased().sqrt() * bonus)
}

/// Known-variance UCB index: `mean + sigma * sqrt(2 log t / n)`.
pub fn classical_index(stats: &ArmStatistics, sigma: f64, t: u64) -> Result<f64> {
    let n = stats.pulls();
    if n < 1 {
        return Err(Error::InsufficientData(
            "classical index needs at least 1 pull".into(),
        ));
    }
    if sigma <= 0.0 {
        return Err(Error::Domain(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    if t < 2 {
        return Err(Error::Domain(format!(
            "classical index needs t >= 2, got {t}"
        )));
    }
    Ok(stats.reward_mean() + sigma * (2.0 * (t as f64).ln() / n as f64).sqrt())
}
