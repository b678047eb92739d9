//! Reward-generating processes.
//!
//! Two environments are provided: a bivariate-Gaussian model where each
//! pull yields a correlated (reward, surrogate) pair with configurable
//! means, variances, and correlation; and a feature-based model where the
//! reward is a nonlinear function of a latent feature vector and the
//! surrogate is a fitted predictor's output on the same features. Features
//! are consumed internally; policies only ever see the (reward, surrogate)
//! pair.

use crate::error::{Error, Result};
use crate::predictor::{
    empirical_rho2, fit, FittedPredictor, PredictorKind, PredictorParams, TrainingSet,
};
use crate::rng::{stream_id, RandomStream, StreamRole};
use serde::{Deserialize, Serialize};

/// Parameters of one bivariate-Gaussian arm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianArmSpec {
    /// Mean of the true reward.
    pub mu: f64,
    /// Mean of the surrogate reward.
    pub mu_tilde: f64,
    /// Standard deviation of the true reward.
    pub sigma: f64,
    /// Standard deviation of the surrogate reward.
    pub sigma_tilde: f64,
    /// Correlation between true and surrogate rewards.
    pub rho: f64,
}

impl GaussianArmSpec {
    pub fn new(mu: f64, mu_tilde: f64, sigma: f64, sigma_tilde: f64, rho: f64) -> Result<Self> {
        let spec = Self {
            mu,
            mu_tilde,
            sigma,
            sigma_tilde,
            rho,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0) {
            return Err(Error::Config(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        if !(self.sigma_tilde > 0.0) {
            return Err(Error::Config(format!(
                "sigma_tilde must be positive, got {}",
                self.sigma_tilde
            )));
        }
        if !(self.rho.abs() <= 1.0) {
            return Err(Error::Config(format!(
                "rho must lie in [-1, 1], got {}",
                self.rho
            )));
        }
        Ok(())
    }

    /// One joint draw, assuming a validated spec. Two independent standard
    /// normals, mixed with weights (rho, sqrt(1 - rho^2)).
    pub fn sample(&self, stream: &mut RandomStream) -> (f64, f64) {
        let z1 = stream.standard_normal();
        let z2 = stream.standard_normal();
        let r = self.mu + self.sigma * z1;
        let mix = self.rho * z1 + (1.0 - self.rho * self.rho).sqrt() * z2;
        let rhat = self.mu_tilde + self.sigma_tilde * mix;
        (r, rhat)
    }

    /// One draw of the surrogate marginal alone.
    pub fn sample_surrogate(&self, stream: &mut RandomStream) -> f64 {
        self.mu_tilde + self.sigma_tilde * stream.standard_normal()
    }
}

/// One joint (reward, surrogate) draw from a validated spec.
pub fn sample_bivariate(spec: &GaussianArmSpec, stream: &mut RandomStream) -> Result<(f64, f64)> {
    spec.validate()?;
    Ok(spec.sample(stream))
}

/// The nonlinear reward surface of the feature environment:
/// `sin(w1 x1^2 + w2 x2^2) + eps`.
pub fn feature_reward(w: [f64; 2], x: [f64; 2], eps: f64) -> f64 {
    (w[0] * x[0] * x[0] + w[1] * x[1] * x[1]).sin() + eps
}

/// Exact mean reward of a feature arm over x ~ N(0, I2).
///
/// With u = x^2 chi-squared(1), E[e^{i w u}] = (1 - 2iw)^{-1/2}, so the
/// mean of the sine is the imaginary part of the product of the two
/// characteristic factors.
pub fn feature_true_mean(w: [f64; 2]) -> f64 {
    let phase = 0.5 * ((2.0 * w[0]).atan() + (2.0 * w[1]).atan());
    let magnitude = ((1.0 + 4.0 * w[0] * w[0]) * (1.0 + 4.0 * w[1] * w[1])).powf(-0.25);
    magnitude * phase.sin()
}

/// One arm of the feature environment: weights, noise level, and the
/// predictor fitted for this arm before any online pull.
#[derive(Debug, Clone)]
pub struct FeatureArmSpec {
    pub weights: [f64; 2],
    pub noise_sigma: f64,
    pub predictor: FittedPredictor,
}

impl FeatureArmSpec {
    fn draw(&self, stream: &mut RandomStream) -> (f64, f64) {
        let x = [stream.standard_normal(), stream.standard_normal()];
        let eps = if self.noise_sigma > 0.0 {
            self.noise_sigma * stream.standard_normal()
        } else {
            0.0
        };
        (
            feature_reward(self.weights, x, eps),
            self.predictor.predict(x),
        )
    }

    fn draw_surrogate(&self, stream: &mut RandomStream) -> f64 {
        let x = [stream.standard_normal(), stream.standard_normal()];
        self.predictor.predict(x)
    }
}

/// A fully built reward process.
#[derive(Debug, Clone)]
pub enum Environment {
    Gaussian(Vec<GaussianArmSpec>),
    Feature(Vec<FeatureArmSpec>),
}

impl Environment {
    pub fn gaussian(arms: Vec<GaussianArmSpec>) -> Result<Self> {
        if arms.is_empty() {
            return Err(Error::Config("environment needs at least one arm".into()));
        }
        for arm in &arms {
            arm.validate()?;
        }
        Ok(Environment::Gaussian(arms))
    }

    pub fn n_arms(&self) -> usize {
        match self {
            Environment::Gaussian(arms) => arms.len(),
            Environment::Feature(arms) => arms.len(),
        }
    }

    /// True mean rewards, used only by the harness for regret accounting.
    pub fn true_means(&self) -> Vec<f64> {
        match self {
            Environment::Gaussian(arms) => arms.iter().map(|a| a.mu).collect(),
            Environment::Feature(arms) => {
                arms.iter().map(|a| feature_true_mean(a.weights)).collect()
            }
        }
    }

    /// Known reward standard deviations, available only for the Gaussian
    /// model (the classical policy needs them).
    pub fn known_sigmas(&self) -> Option<Vec<f64>> {
        match self {
            Environment::Gaussian(arms) => Some(arms.iter().map(|a| a.sigma).collect()),
            Environment::Feature(_) => None,
        }
    }

    /// One online pull of `arm`: a joint (reward, surrogate) observation.
    pub fn pull(&self, arm: usize, stream: &mut RandomStream) -> (f64, f64) {
        match self {
            Environment::Gaussian(arms) => arms[arm].sample(stream),
            Environment::Feature(arms) => arms[arm].draw(stream),
        }
    }

    /// One offline surrogate draw for `arm`, from the same marginal (and,
    /// for the feature model, the same sampling pipeline) as the online
    /// surrogates.
    pub fn sample_offline(&self, arm: usize, stream: &mut RandomStream) -> f64 {
        match self {
            Environment::Gaussian(arms) => arms[arm].sample_surrogate(stream),
            Environment::Feature(arms) => arms[arm].draw_surrogate(stream),
        }
    }
}

/// Static per-arm pools of offline surrogate values.
#[derive(Debug, Clone, Default)]
pub struct OfflinePool {
    per_arm: Vec<Vec<f64>>,
}

impl OfflinePool {
    pub fn arm(&self, k: usize) -> &[f64] {
        &self.per_arm[k]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.per_arm.iter().map(Vec::len).collect()
    }
}

/// Draws `sizes[k]` offline surrogates per arm.
pub fn build_offline_pool(
    env: &Environment,
    sizes: &[u64],
    stream: &mut RandomStream,
) -> Result<OfflinePool> {
    if sizes.len() != env.n_arms() {
        return Err(Error::Config(format!(
            "offline sizes: got {} entries for {} arms",
            sizes.len(),
            env.n_arms()
        )));
    }
    let per_arm = sizes
        .iter()
        .enumerate()
        .map(|(k, &n)| (0..n).map(|_| env.sample_offline(k, stream)).collect())
        .collect();
    Ok(OfflinePool { per_arm })
}

/// Recipe for the feature environment: arm count, noise level, predictor
/// family, and the sizes of the (disjoint) training and evaluation sets.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FeatureSetup {
    pub arms: usize,
    pub noise_sigma: f64,
    pub predictor: PredictorKind,
    pub train_size: usize,
    pub eval_size: usize,
    pub weight_low: f64,
    pub weight_high: f64,
    pub params: PredictorParams,
}

impl Default for FeatureSetup {
    fn default() -> Self {
        Self {
            arms: 5,
            noise_sigma: 0.2,
            predictor: PredictorKind::Tree,
            train_size: 2000,
            eval_size: 2000,
            weight_low: 0.5,
            weight_high: 1.5,
            params: PredictorParams::default(),
        }
    }
}

/// Fit quality measured on held-out draws at build time.
#[derive(Debug, Clone, Serialize)]
pub struct FeatureDiagnostics {
    pub rho2_per_arm: Vec<f64>,
    pub avg_rho2: f64,
}

impl FeatureSetup {
    pub fn validate(&self) -> Result<()> {
        if self.arms == 0 {
            return Err(Error::Config("feature environment needs arms >= 1".into()));
        }
        if self.noise_sigma < 0.0 {
            return Err(Error::Config(format!(
                "noise_sigma must be nonnegative, got {}",
                self.noise_sigma
            )));
        }
        if self.train_size < 2 {
            return Err(Error::Config(format!(
                "train_size must be at least 2, got {}",
                self.train_size
            )));
        }
        if self.eval_size < 2 {
            return Err(Error::Config(format!(
                "eval_size must be at least 2, got {}",
                self.eval_size
            )));
        }
        if !(self.weight_low <= self.weight_high) {
            return Err(Error::Config(format!(
                "weight range inverted: [{}, {}]",
                self.weight_low, self.weight_high
            )));
        }
        Ok(())
    }

    /// Builds the environment once per experiment: draws arm weights from a
    /// dedicated stream, fits one predictor per arm on freshly generated
    /// training data, and measures held-out fit quality. Training and
    /// evaluation data are disjoint from every episode's online and offline
    /// draws by stream-role separation.
    pub fn build(&self, base_seed: u64) -> Result<(Environment, FeatureDiagnostics)> {
        self.validate()?;
        let mut weight_stream = RandomStream::new(base_seed, stream_id(0, StreamRole::ArmWeights));
        let mut arms = Vec::with_capacity(self.arms);
        let mut rho2_per_arm = Vec::with_capacity(self.arms);
        for k in 0..self.arms {
            let weights = [
                weight_stream.uniform(self.weight_low, self.weight_high),
                weight_stream.uniform(self.weight_low, self.weight_high),
            ];
            let mut data_stream =
                RandomStream::new(base_seed, stream_id(k as u64, StreamRole::PredictorData));
            let mut init_stream =
                RandomStream::new(base_seed, stream_id(k as u64, StreamRole::PredictorInit));

            let train = self.generate(weights, self.train_size, &mut data_stream);
            let predictor = fit(self.predictor, &train, &self.params, &mut init_stream)?;

            let eval = self.generate(weights, self.eval_size, &mut data_stream);
            let preds: Vec<f64> = eval
                .features
                .iter()
                .map(|&x| predictor.predict(x))
                .collect();
            rho2_per_arm.push(empirical_rho2(&preds, &eval.targets));

            arms.push(FeatureArmSpec {
                weights,
                noise_sigma: self.noise_sigma,
                predictor,
            });
        }
        let avg_rho2 = rho2_per_arm.iter().sum::<f64>() / self.arms as f64;
        Ok((
            Environment::Feature(arms),
            FeatureDiagnostics {
                rho2_per_arm,
                avg_rho2,
            },
        ))
    }

    fn generate(&self, weights: [f64; 2], n: usize, stream: &mut RandomStream) -> TrainingSet {
        let mut set = TrainingSet::default();
        for _ in 0..n {
            let x = [stream.standard_normal(), stream.standard_normal()];
            let eps = if self.noise_sigma > 0.0 {
                self.noise_sigma * stream.standard_normal()
            } else {
                0.0
            };
            set.push(x, feature_reward(weights, x, eps));
        }
        set
    }
}
