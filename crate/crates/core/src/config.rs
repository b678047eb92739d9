//! Experiment configuration: a TOML document with dotted sections, plus
//! `key=value` overrides applied after file parsing. Unknown keys are
//! errors, not warnings; every section has documented defaults (see
//! `docs/config.md`) so each command also runs without a file.

use crate::env::{Environment, FeatureSetup, GaussianArmSpec};
use crate::error::{Error, Result};
use crate::policy::PolicyKind;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Full experiment description.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationConfig {
    pub sim: SimSection,
    pub env: EnvSection,
    pub sweep: Option<SweepSection>,
    pub coverage: Option<CoverageSection>,
    pub quantile_table: Option<QuantileTableSection>,
}

/// Episode shape, replication count, seed, and policy list.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimSection {
    pub horizon: u64,
    pub replications: u32,
    pub seed: u64,
    pub policies: Vec<PolicyKind>,
    /// Uniform per-arm offline pool size.
    pub offline_size: Option<u64>,
    /// Explicit per-arm offline pool sizes; takes precedence over
    /// `offline_size` when both are set.
    pub offline_sizes: Option<Vec<u64>>,
    /// Emit the per-step trace CSV alongside the results table.
    pub traces: bool,
}

impl Default for SimSection {
    fn default() -> Self {
        Self {
            horizon: 1000,
            replications: 100,
            seed: 0,
            policies: vec![PolicyKind::MlaUcb, PolicyKind::ChkUcb],
            offline_size: Some(100),
            offline_sizes: None,
            traces: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvKind {
    Gaussian,
    Feature,
}

/// Which reward process to simulate, with per-kind parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnvSection {
    pub kind: EnvKind,
    pub gaussian: Option<GaussianSection>,
    pub feature: Option<FeatureSetup>,
}

impl Default for EnvSection {
    fn default() -> Self {
        Self {
            kind: EnvKind::Gaussian,
            gaussian: Some(GaussianSection::default()),
            feature: None,
        }
    }
}

/// Scalar broadcast to every arm, or one value per arm.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PerArm {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl PerArm {
    fn resolve(&self, n_arms: usize, field: &str) -> Result<Vec<f64>> {
        match self {
            PerArm::Scalar(v) => Ok(vec![*v; n_arms]),
            PerArm::Vector(vs) if vs.len() == n_arms => Ok(vs.clone()),
            PerArm::Vector(vs) => Err(Error::Config(format!(
                "{field}: got {} values for {n_arms} arms",
                vs.len()
            ))),
        }
    }
}

/// Bivariate-Gaussian arm set: true means, surrogate means, scales, and a
/// correlation shared across arms.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaussianSection {
    pub mu: Vec<f64>,
    pub mu_tilde: Vec<f64>,
    pub sigma: PerArm,
    pub sigma_tilde: PerArm,
    pub rho: f64,
}

impl Default for GaussianSection {
    fn default() -> Self {
        Self {
            mu: vec![0.5, 0.0, 0.0, 0.0, 0.0],
            mu_tilde: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            sigma: PerArm::Scalar(1.0),
            sigma_tilde: PerArm::Scalar(1.0),
            rho: 0.5f64.sqrt(),
        }
    }
}

impl GaussianSection {
    pub fn arms(&self) -> Result<Vec<GaussianArmSpec>> {
        let k = self.mu.len();
        if k == 0 {
            return Err(Error::Config(
                "env.gaussian.mu: needs at least one arm".into(),
            ));
        }
        if self.mu_tilde.len() != k {
            return Err(Error::Config(format!(
                "env.gaussian.mu_tilde: got {} values for {k} arms",
                self.mu_tilde.len()
            )));
        }
        let sigma = self.sigma.resolve(k, "env.gaussian.sigma")?;
        let sigma_tilde = self.sigma_tilde.resolve(k, "env.gaussian.sigma_tilde")?;
        (0..k)
            .map(|i| {
                GaussianArmSpec::new(
                    self.mu[i],
                    self.mu_tilde[i],
                    sigma[i],
                    sigma_tilde[i],
                    self.rho,
                )
            })
            .collect()
    }
}

/// Axes along which `sweep` varies the configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepAxis {
    /// Uniform offline pool size per arm.
    N,
    /// Squared correlation of the Gaussian environment.
    #[serde(rename = "rho2")]
    Rho2,
    /// Mean of the first arm (the reward gap in the default arm layout).
    Delta,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::N => "N",
            SweepAxis::Rho2 => "rho2",
            SweepAxis::Delta => "Delta",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub axis: SweepAxis,
    pub grid: Vec<f64>,
}

/// Grid for the confidence-bound coverage check.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoverageSection {
    pub n: Vec<u64>,
    #[serde(rename = "N")]
    pub offline: Vec<u64>,
    pub rho: Vec<f64>,
    pub delta: Vec<f64>,
    pub replications: u64,
    pub mu: f64,
    pub mu_tilde: f64,
    pub sigma: f64,
    pub sigma_tilde: f64,
}

impl Default for CoverageSection {
    fn default() -> Self {
        Self {
            n: vec![10, 20],
            offline: vec![100, 10_000],
            rho: vec![0.0, 0.7, 0.95],
            delta: vec![0.01, 0.05],
            replications: 20_000,
            mu: 0.0,
            mu_tilde: 0.0,
            sigma: 1.0,
            sigma_tilde: 1.0,
        }
    }
}

/// Grid for the quantile-versus-bound table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuantileTableSection {
    /// Values of s; must all exceed 1.
    pub s: Vec<f64>,
    /// Fixed degrees of freedom; when absent, d = floor(log s) per point,
    /// clamped to at least 2.
    pub d: Option<u64>,
}

impl Default for QuantileTableSection {
    fn default() -> Self {
        // 26 log-spaced points over [10, 1e6].
        let s = (0..26)
            .map(|i| 10f64.powf(1.0 + 5.0 * i as f64 / 25.0))
            .collect();
        Self { s, d: None }
    }
}

impl SimulationConfig {
    /// Parses a config file, applies `key=value` overrides and the seed
    /// override, then validates. All arguments are optional; defaults
    /// describe a runnable five-arm Gaussian experiment.
    pub fn load(
        path: Option<&Path>,
        overrides: &[String],
        seed_override: Option<u64>,
    ) -> Result<Self> {
        let text = match path {
            Some(p) => std::fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read config {}: {e}", p.display())))?,
            None => String::new(),
        };
        let mut table: toml::Table = text
            .parse()
            .map_err(|e| Error::Config(format!("config parse error: {e}")))?;
        for entry in overrides {
            apply_override(&mut table, entry)?;
        }
        let mut config: SimulationConfig = table
            .try_into()
            .map_err(|e| Error::Config(format!("config error: {e}")))?;
        if let Some(seed) = seed_override {
            config.sim.seed = seed;
        }
        config.validate()?;
        Ok(config)
    }

    /// Builds the environment. Feature environments fit their predictors
    /// here, once per experiment.
    pub fn build_environment(&self) -> Result<Environment> {
        match self.env.kind {
            EnvKind::Gaussian => {
                let section = self.env.gaussian.as_ref().ok_or_else(|| {
                    Error::Config("env.kind = gaussian but [env.gaussian] is missing".into())
                })?;
                Environment::gaussian(section.arms()?)
            }
            EnvKind::Feature => {
                let setup = self.env.feature.as_ref().ok_or_else(|| {
                    Error::Config("env.kind = feature but [env.feature] is missing".into())
                })?;
                let (env, _) = setup.build(self.sim.seed)?;
                Ok(env)
            }
        }
    }

    /// Number of arms implied by the environment section.
    pub fn n_arms(&self) -> Result<usize> {
        match self.env.kind {
            EnvKind::Gaussian => Ok(self
                .env
                .gaussian
                .as_ref()
                .ok_or_else(|| {
                    Error::Config("env.kind = gaussian but [env.gaussian] is missing".into())
                })?
                .mu
                .len()),
            EnvKind::Feature => Ok(self
                .env
                .feature
                .as_ref()
                .ok_or_else(|| {
                    Error::Config("env.kind = feature but [env.feature] is missing".into())
                })?
                .arms),
        }
    }

    /// Per-arm offline pool sizes after resolving the uniform shorthand.
    /// The explicit list wins over the uniform value when both are set.
    pub fn offline_sizes(&self) -> Result<Vec<u64>> {
        let k = self.n_arms()?;
        if let Some(list) = &self.sim.offline_sizes {
            if list.len() != k {
                return Err(Error::Config(format!(
                    "sim.offline_sizes: got {} entries for {k} arms",
                    list.len()
                )));
            }
            return Ok(list.clone());
        }
        Ok(vec![self.sim.offline_size.unwrap_or(0); k])
    }

    pub fn validate(&self) -> Result<()> {
        if self.sim.replications < 1 {
            return Err(Error::Config("sim.replications must be at least 1".into()));
        }
        if self.sim.policies.is_empty() {
            return Err(Error::Config("sim.policies must not be empty".into()));
        }
        match self.env.kind {
            EnvKind::Gaussian => {
                let section = self.env.gaussian.as_ref().ok_or_else(|| {
                    Error::Config("env.kind = gaussian but [env.gaussian] is missing".into())
                })?;
                let arms = section.arms()?;
                require_unique_optimum(&arms.iter().map(|a| a.mu).collect::<Vec<_>>())?;
            }
            EnvKind::Feature => {
                let setup = self.env.feature.as_ref().ok_or_else(|| {
                    Error::Config("env.kind = feature but [env.feature] is missing".into())
                })?;
                setup.validate()?;
                if self.sim.policies.contains(&PolicyKind::ClassicalUcb) {
                    return Err(Error::Config(
                        "sim.policies: classical_ucb needs known sigmas, which the feature \
                         environment does not provide"
                            .into(),
                    ));
                }
            }
        }
        let k = self.n_arms()? as u64;
        for policy in &self.sim.policies {
            let init = policy.init_pulls() * k;
            if self.sim.horizon <= init {
                return Err(Error::Config(format!(
                    "sim.horizon: T < {}K: horizon {} must exceed the {} initialization \
                     pulls of {} with K = {k}",
                    policy.init_pulls(),
                    self.sim.horizon,
                    init,
                    policy.name()
                )));
            }
        }
        self.offline_sizes()?;
        if let Some(sweep) = &self.sweep {
            if sweep.grid.is_empty() {
                return Err(Error::Config("sweep.grid must not be empty".into()));
            }
            match sweep.axis {
                SweepAxis::N => {
                    for v in &sweep.grid {
                        if *v < 0.0 || v.fract() != 0.0 {
                            return Err(Error::Config(format!(
                                "sweep.grid: N values must be nonnegative integers, got {v}"
                            )));
                        }
                    }
                }
                SweepAxis::Rho2 => {
                    if self.env.kind != EnvKind::Gaussian {
                        return Err(Error::Config(
                            "sweep.axis = rho2 requires the gaussian environment".into(),
                        ));
                    }
                    for v in &sweep.grid {
                        if !(0.0..=1.0).contains(v) {
                            return Err(Error::Config(format!(
                                "sweep.grid: rho2 values must lie in [0, 1], got {v}"
                            )));
                        }
                    }
                }
                SweepAxis::Delta => {
                    if self.env.kind != EnvKind::Gaussian {
                        return Err(Error::Config(
                            "sweep.axis = Delta requires the gaussian environment".into(),
                        ));
                    }
                }
            }
        }
        if let Some(coverage) = &self.coverage {
            coverage.validate()?;
        }
        if let Some(table) = &self.quantile_table {
            table.validate()?;
        }
        Ok(())
    }

    /// Returns a copy with the sweep axis pinned to `value`.
    pub fn at_sweep_point(&self, axis: SweepAxis, value: f64) -> Result<Self> {
        let mut point = self.clone();
        match axis {
            SweepAxis::N => {
                point.sim.offline_size = Some(value as u64);
                point.sim.offline_sizes = None;
            }
            SweepAxis::Rho2 => {
                let section = point.env.gaussian.as_mut().ok_or_else(|| {
                    Error::Config("sweep.axis = rho2 requires the gaussian environment".into())
                })?;
                section.rho = value.sqrt();
            }
            SweepAxis::Delta => {
                let section = point.env.gaussian.as_mut().ok_or_else(|| {
                    Error::Config("sweep.axis = Delta requires the gaussian environment".into())
                })?;
                if section.mu.is_empty() {
                    return Err(Error::Config(
                        "env.gaussian.mu: needs at least one arm".into(),
                    ));
                }
                section.mu[0] = value;
            }
        }
        point.validate()?;
        Ok(point)
    }
}

impl CoverageSection {
    pub fn validate(&self) -> Result<()> {
        if self.replications < 1000 {
            return Err(Error::Config(format!(
                "coverage.replications must be at least 1000, got {}",
                self.replications
            )));
        }
        if self.n.is_empty()
            || self.offline.is_empty()
            || self.rho.is_empty()
            || self.delta.is_empty()
        {
            return Err(Error::Config("coverage grids must not be empty".into()));
        }
        for &n in &self.n {
            if n < 4 {
                return Err(Error::Config(format!("coverage.n: needs n >= 4, got {n}")));
            }
        }
        for &d in &self.delta {
            if !(d > 0.0 && d < 0.5) {
                return Err(Error::Config(format!(
                    "coverage.delta: needs 0 < delta < 1/2, got {d}"
                )));
            }
        }
        for &r in &self.rho {
            if r.abs() > 1.0 {
                return Err(Error::Config(format!("coverage.rho: |rho| <= 1, got {r}")));
            }
        }
        if !(self.sigma > 0.0) || !(self.sigma_tilde > 0.0) {
            return Err(Error::Config("coverage sigmas must be positive".into()));
        }
        Ok(())
    }
}

impl QuantileTableSection {
    pub fn validate(&self) -> Result<()> {
        if self.s.is_empty() {
            return Err(Error::Config("quantile_table.s must not be empty".into()));
        }
        for &s in &self.s {
            if !(s > 1.0) {
                return Err(Error::Config(format!(
                    "quantile_table.s: every s must exceed 1, got {s}"
                )));
            }
        }
        if let Some(d) = self.d {
            if d < 2 {
                return Err(Error::Config(format!(
                    "quantile_table.d: needs d >= 2, got {d}"
                )));
            }
        }
        Ok(())
    }
}

/// Errors unless exactly one arm attains the maximal true mean.
pub fn require_unique_optimum(means: &[f64]) -> Result<()> {
    let best = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ties = means.iter().filter(|&&m| m == best).count();
    if ties != 1 {
        return Err(Error::Config(format!(
            "arm means must have a unique optimum; {ties} arms tie at {best}"
        )));
    }
    Ok(())
}

/// Applies one `dotted.path=value` override onto the raw TOML document.
/// The value is parsed as TOML (so numbers, booleans, arrays, and quoted
/// strings all work); bare words fall back to strings.
fn apply_override(table: &mut toml::Table, entry: &str) -> Result<()> {
    let (path, raw_value) = entry
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override `{entry}` is not of the form key=value")))?;
    let path = path.trim();
    if path.is_empty() {
        return Err(Error::Config(format!(
            "override `{entry}` has an empty key"
        )));
    }
    let value = parse_override_value(raw_value.trim());

    let mut current = table;
    let parts: Vec<&str> = path.split('.').collect();
    for part in &parts[..parts.len() - 1] {
        let slot = current
            .entry(part.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        current = slot
            .as_table_mut()
            .ok_or_else(|| Error::Config(format!("override `{path}`: `{part}` is not a table")))?;
    }
    current.insert(parts[parts.len() - 1].to_string(), value);
    Ok(())
}

fn parse_override_value(raw: &str) -> toml::Value {
    let doc = format!("v = {raw}");
    match doc.parse::<toml::Table>() {
        Ok(mut t) => t.remove("v").unwrap(),
        Err(_) => toml::Value::String(raw.to_string()),
    }
}
