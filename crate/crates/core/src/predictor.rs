//! Built-in reward predictors for the feature-based environment, behind a
//! single fit/predict contract: exact least squares on (1, x1, x2), a
//! depth-limited CART regression tree, and a one-hidden-layer MLP trained
//! by full-batch gradient descent. Fitted models are immutable and predict
//! deterministically.

use crate::error::{Error, Result};
use crate::rng::RandomStream;
use serde::{Deserialize, Serialize};

/// Feature/target pairs used to fit a predictor.
#[derive(Debug, Clone, Default)]
pub struct TrainingSet {
    pub features: Vec<[f64; 2]>,
    pub targets: Vec<f64>,
}

impl TrainingSet {
    pub fn push(&mut self, x: [f64; 2], y: f64) {
        self.features.push(x);
        self.targets.push(y);
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    fn validate(&self) -> Result<()> {
        if self.features.len() != self.targets.len() {
            return Err(Error::Config(format!(
                "training set features/targets length mismatch: {} vs {}",
                self.features.len(),
                self.targets.len()
            )));
        }
        if self.len() < 2 {
            return Err(Error::InsufficientData(format!(
                "training set needs at least 2 samples, got {}",
                self.len()
            )));
        }
        Ok(())
    }
}

/// Predictor families available to the feature environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictorKind {
    Linear,
    Tree,
    Mlp,
}

impl PredictorKind {
    pub fn name(self) -> &'static str {
        match self {
            PredictorKind::Linear => "linear",
            PredictorKind::Tree => "tree",
            PredictorKind::Mlp => "mlp",
        }
    }
}

/// Hyperparameters, all fixed up front; no tuning loops.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PredictorParams {
    pub tree_max_depth: usize,
    pub tree_min_leaf: usize,
    pub mlp_hidden: usize,
    pub mlp_steps: usize,
    pub mlp_learning_rate: f64,
    pub mlp_momentum: f64,
}

impl Default for PredictorParams {
    fn default() -> Self {
        Self {
            tree_max_depth: 10,
            tree_min_leaf: 10,
            mlp_hidden: 32,
            mlp_steps: 2000,
            mlp_learning_rate: 0.1,
            mlp_momentum: 0.9,
        }
    }
}

/// A fitted model; `predict` is deterministic given the learned state.
#[derive(Debug, Clone)]
pub enum FittedPredictor {
    /// Coefficients for 1, x1, x2.
    Linear([f64; 3]),
    Tree(TreeNode),
    Mlp(MlpModel),
}

impl FittedPredictor {
    pub fn predict(&self, x: [f64; 2]) -> f64 {
        match self {
            FittedPredictor::Linear(w) => w[0] + w[1] * x[0] + w[2] * x[1],
            FittedPredictor::Tree(root) => root.predict(x),
            FittedPredictor::Mlp(m) => m.predict(x),
        }
    }
}

/// Fits a predictor of the given family. The stream only feeds MLP weight
/// initialization; the other families are deterministic in the data.
pub fn fit(
    kind: PredictorKind,
    train: &TrainingSet,
    params: &PredictorParams,
    stream: &mut RandomStream,
) -> Result<FittedPredictor> {
    train.validate()?;
    match kind {
        PredictorKind::Linear => Ok(FittedPredictor::Linear(fit_linear(train))),
        PredictorKind::Tree => Ok(FittedPredictor::Tree(fit_tree(train, params))),
        PredictorKind::Mlp => Ok(FittedPredictor::Mlp(fit_mlp(train, params, stream))),
    }
}

/// Squared Pearson correlation between predictions and outcomes; zero by
/// convention when either side has no variance.
pub fn empirical_rho2(preds: &[f64], rewards: &[f64]) -> f64 {
    debug_assert_eq!(preds.len(), rewards.len());
    let n = preds.len();
    if n < 2 {
        return 0.0;
    }
    let nf = n as f64;
    let mean_p = preds.iter().sum::<f64>() / nf;
    let mean_r = rewards.iter().sum::<f64>() / nf;
    let mut spp = 0.0;
    let mut srr = 0.0;
    let mut spr = 0.0;
    for (&p, &r) in preds.iter().zip(rewards) {
        spp += (p - mean_p) * (p - mean_p);
        srr += (r - mean_r) * (r - mean_r);
        spr += (p - mean_p) * (r - mean_r);
    }
    // Constant sequences leave only rounding residue in the centered sums.
    let floor_p = 1e-20 * nf * (1.0 + mean_p * mean_p);
    let floor_r = 1e-20 * nf * (1.0 + mean_r * mean_r);
    if spp <= floor_p || srr <= floor_r {
        return 0.0;
    }
    (spr * spr) / (spp * srr)
}

// ---------------------------------------------------------------------------
// Linear least squares
// ---------------------------------------------------------------------------

fn fit_linear(train: &TrainingSet) -> [f64; 3] {
    // Normal equations for the design (1, x1, x2).
    let mut a = [[0.0f64; 3]; 3];
    let mut b = [0.0f64; 3];
    for (x, &y) in train.features.iter().zip(&train.targets) {
        let row = [1.0, x[0], x[1]];
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] += row[i] * row[j];
            }
            b[i] += row[i] * y;
        }
    }
    match solve3(a, b) {
        Some(w) => w,
        // Collinear features: fall back to the intercept-only fit.
        None => [
            train.targets.iter().sum::<f64>() / train.len() as f64,
            0.0,
            0.0,
        ],
    }
}

/// Gaussian elimination with partial pivoting on a 3x3 system.
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0f64; 3];
    for col in (0..3).rev() {
        let mut s = b[col];
        for k in col + 1..3 {
            s -= a[col][k] * x[k];
        }
        x[col] = s / a[col][col];
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// CART regression tree
// ---------------------------------------------------------------------------

/// Binary regression tree with axis-aligned splits.
#[derive(Debug, Clone)]
pub enum TreeNode {
    Leaf {
        value: f64,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
}

impl TreeNode {
    pub fn predict(&self, x: [f64; 2]) -> f64 {
        match self {
            TreeNode::Leaf { value } => *value,
            TreeNode::Split {
                feature,
                threshold,
                left,
                right,
            } => {
                if x[*feature] <= *threshold {
                    left.predict(x)
                } else {
                    right.predict(x)
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }
}

fn fit_tree(train: &TrainingSet, params: &PredictorParams) -> TreeNode {
    let indices: Vec<usize> = (0..train.len()).collect();
    grow(train, &indices, params.tree_max_depth, params.tree_min_leaf)
}

fn leaf_mean(train: &TrainingSet, idx: &[usize]) -> TreeNode {
    let value = idx.iter().map(|&i| train.targets[i]).sum::<f64>() / idx.len() as f64;
    TreeNode::Leaf { value }
}

fn grow(train: &TrainingSet, idx: &[usize], depth_left: usize, min_leaf: usize) -> TreeNode {
    if depth_left == 0 || idx.len() < 2 * min_leaf {
        return leaf_mean(train, idx);
    }
    match best_split(train, idx, min_leaf) {
        None => leaf_mean(train, idx),
        Some((feature, threshold)) => {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for &i in idx {
                if train.features[i][feature] <= threshold {
                    left.push(i);
                } else {
                    right.push(i);
                }
            }
            TreeNode::Split {
                feature,
                threshold,
                left: Box::new(grow(train, &left, depth_left - 1, min_leaf)),
                right: Box::new(grow(train, &right, depth_left - 1, min_leaf)),
            }
        }
    }
}

/// Exhaustive variance-reduction split search via sorted prefix sums.
/// Returns None when no threshold leaves `min_leaf` samples on both sides
/// or no split reduces the sum of squared errors.
fn best_split(train: &TrainingSet, idx: &[usize], min_leaf: usize) -> Option<(usize, f64)> {
    let n = idx.len();
    let total_sum: f64 = idx.iter().map(|&i| train.targets[i]).sum();
    let total_sum2: f64 = idx
        .iter()
        .map(|&i| train.targets[i] * train.targets[i])
        .sum();
    let parent_sse = total_sum2 - total_sum * total_sum / n as f64;

    let mut best: Option<(usize, f64, f64)> = None; // (feature, threshold, sse)
    for feature in 0..2 {
        let mut order: Vec<usize> = idx.to_vec();
        order.sort_by(|&i, &j| train.features[i][feature].total_cmp(&train.features[j][feature]));
        let mut left_sum = 0.0;
        let mut left_sum2 = 0.0;
        for (count, &i) in order.iter().enumerate() {
            let y = train.targets[i];
            left_sum += y;
            left_sum2 += y * y;
            let left_n = count + 1;
            let right_n = n - left_n;
            if left_n < min_leaf || right_n < min_leaf {
                continue;
            }
            let here = train.features[i][feature];
            let next = train.features[order[count + 1]][feature];
            if next <= here {
                // Constant run; no threshold separates these samples.
                continue;
            }
            let right_sum = total_sum - left_sum;
            let right_sum2 = total_sum2 - left_sum2;
            let sse = (left_sum2 - left_sum * left_sum / left_n as f64)
                + (right_sum2 - right_sum * right_sum / right_n as f64);
            if best.as_ref().is_none_or(|b| sse < b.2) {
                best = Some((feature, 0.5 * (here + next), sse));
            }
        }
    }
    best.and_then(|(feature, threshold, sse)| (sse < parent_sse).then_some((feature, threshold)))
}

// ---------------------------------------------------------------------------
// One-hidden-layer MLP
// ---------------------------------------------------------------------------

/// tanh hidden layer, linear output.
#[derive(Debug, Clone)]
pub struct MlpModel {
    pub w1: Vec<[f64; 2]>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

impl MlpModel {
    fn init(hidden: usize, stream: &mut RandomStream) -> Self {
        let s1 = (1.0f64 / 2.0).sqrt();
        let s2 = (1.0 / hidden as f64).sqrt();
        // Random hidden biases matter here: with zero biases the net is an
        // odd function of x and starts out uncorrelated with even targets.
        Self {
            w1: (0..hidden)
                .map(|_| [stream.standard_normal() * s1, stream.standard_normal() * s1])
                .collect(),
            b1: (0..hidden).map(|_| stream.standard_normal()).collect(),
            w2: (0..hidden).map(|_| stream.standard_normal() * s2).collect(),
            b2: 0.0,
        }
    }

    pub fn predict(&self, x: [f64; 2]) -> f64 {
        let mut out = self.b2;
        for j in 0..self.w1.len() {
            let h = (self.w1[j][0] * x[0] + self.w1[j][1] * x[1] + self.b1[j]).tanh();
            out += self.w2[j] * h;
        }
        out
    }
}

/// Gradient accumulator mirroring the model layout.
#[derive(Debug, Clone)]
pub(crate) struct MlpGrad {
    pub w1: Vec<[f64; 2]>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

/// Mean squared error (halved) and its analytic gradient over the batch.
pub(crate) fn mlp_loss_and_grad(model: &MlpModel, train: &TrainingSet) -> (f64, MlpGrad) {
    let hidden = model.w1.len();
    let nf = train.len() as f64;
    let mut grad = MlpGrad {
        w1: vec![[0.0; 2]; hidden],
        b1: vec![0.0; hidden],
        w2: vec![0.0; hidden],
        b2: 0.0,
    };
    let mut loss = 0.0;
    let mut h = vec![0.0f64; hidden];
    for (x, &y) in train.features.iter().zip(&train.targets) {
        let mut pred = model.b2;
        for j in 0..hidden {
            h[j] = (model.w1[j][0] * x[0] + model.w1[j][1] * x[1] + model.b1[j]).tanh();
            pred += model.w2[j] * h[j];
        }
        let err = pred - y;
        loss += 0.5 * err * err / nf;
        let dpred = err / nf;
        grad.b2 += dpred;
        for j in 0..hidden {
            grad.w2[j] += dpred * h[j];
            let dz = dpred * model.w2[j] * (1.0 - h[j] * h[j]);
            grad.b1[j] += dz;
            grad.w1[j][0] += dz * x[0];
            grad.w1[j][1] += dz * x[1];
        }
    }
    (loss, grad)
}

fn fit_mlp(train: &TrainingSet, params: &PredictorParams, stream: &mut RandomStream) -> MlpModel {
    let mut model = MlpModel::init(params.mlp_hidden, stream);
    let hidden = model.w1.len();
    let lr = params.mlp_learning_rate;
    let momentum = params.mlp_momentum;
    let mut velocity = MlpGrad {
        w1: vec![[0.0; 2]; hidden],
        b1: vec![0.0; hidden],
        w2: vec![0.0; hidden],
        b2: 0.0,
    };
    for _ in 0..params.mlp_steps {
        let (_, grad) = mlp_loss_and_grad(&model, train);
        velocity.b2 = momentum * velocity.b2 + grad.b2;
        model.b2 -= lr * velocity.b2;
        for j in 0..hidden {
            velocity.w1[j][0] = momentum * velocity.w1[j][0] + grad.w1[j][0];
            velocity.w1[j][1] = momentum * velocity.w1[j][1] + grad.w1[j][1];
            velocity.b1[j] = momentum * velocity.b1[j] + grad.b1[j];
            velocity.w2[j] = momentum * velocity.w2[j] + grad.w2[j];
            model.w1[j][0] -= lr * velocity.w1[j][0];
            model.w1[j][1] -= lr * velocity.w1[j][1];
            model.b1[j] -= lr * velocity.b1[j];
            model.w2[j] -= lr * velocity.w2[j];
        }
    }
    model
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::feature_reward;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn sine_training_set(n: usize, noise: f64, stream: &mut RandomStream) -> TrainingSet {
        let mut train = TrainingSet::default();
        for _ in 0..n {
            let x = [stream.standard_normal(), stream.standard_normal()];
            let eps = if noise > 0.0 {
                noise * stream.standard_normal()
            } else {
                0.0
            };
            train.push(x, feature_reward([1.0, 1.0], x, eps));
        }
        train
    }

    fn predictions(model: &FittedPredictor, xs: &[[f64; 2]]) -> Vec<f64> {
        xs.iter().map(|&x| model.predict(x)).collect()
    }

    #[test]
    fn linear_recovers_affine_targets() {
        let mut stream = RandomStream::new(1, 0);
        let mut train = TrainingSet::default();
        for _ in 0..100 {
            let x = [stream.standard_normal(), stream.standard_normal()];
            train.push(x, 2.0 - 0.5 * x[0] + 3.25 * x[1]);
        }
        let model = fit(
            PredictorKind::Linear,
            &train,
            &PredictorParams::default(),
            &mut stream,
        )
        .unwrap();
        for (x, &y) in train.features.iter().zip(&train.targets) {
            assert!((model.predict(*x) - y).abs() <= 1e-8);
        }
        // Zero-coefficient model predicts zero everywhere.
        let zero = FittedPredictor::Linear([0.0; 3]);
        assert_eq!(zero.predict([3.0, -4.0]), 0.0);
    }

    #[test]
    fn tree_fits_nonlinear_surface() {
        let mut stream = RandomStream::new(2, 0);
        let train = sine_training_set(2000, 0.0, &mut stream);
        let model = fit(
            PredictorKind::Tree,
            &train,
            &PredictorParams::default(),
            &mut stream,
        )
        .unwrap();
        let preds = predictions(&model, &train.features);
        let rho2 = empirical_rho2(&preds, &train.targets);
        assert!(rho2 >= 0.8, "training rho^2 {rho2}");
    }

    #[test]
    fn linear_cannot_fit_sine_surface() {
        let mut stream = RandomStream::new(3, 0);
        let train = sine_training_set(2000, 0.0, &mut stream);
        let model = fit(
            PredictorKind::Linear,
            &train,
            &PredictorParams::default(),
            &mut stream,
        )
        .unwrap();
        let held_out = sine_training_set(2000, 0.0, &mut stream);
        let preds = predictions(&model, &held_out.features);
        let rho2 = empirical_rho2(&preds, &held_out.targets);
        assert!(rho2 <= 0.05, "held-out rho^2 {rho2}");
    }

    #[test]
    fn tiny_tree_is_a_single_leaf() {
        let mut stream = RandomStream::new(4, 0);
        let mut train = TrainingSet::default();
        for i in 0..10 {
            train.push([i as f64, 0.0], i as f64);
        }
        // min_leaf 10 forbids any split of 10 samples.
        let model = fit(
            PredictorKind::Tree,
            &train,
            &PredictorParams::default(),
            &mut stream,
        )
        .unwrap();
        let mean = train.targets.iter().sum::<f64>() / 10.0;
        assert_abs_diff_eq!(model.predict([100.0, 100.0]), mean, epsilon = 1e-12);
        assert_abs_diff_eq!(model.predict([-5.0, 2.0]), mean, epsilon = 1e-12);
    }

    #[test]
    fn tree_respects_depth_limit() {
        let mut stream = RandomStream::new(5, 0);
        let train = sine_training_set(3000, 0.1, &mut stream);
        let params = PredictorParams {
            tree_max_depth: 3,
            ..Default::default()
        };
        let model = fit(PredictorKind::Tree, &train, &params, &mut stream).unwrap();
        if let FittedPredictor::Tree(root) = model {
            assert!(root.depth() <= 3);
        } else {
            unreachable!();
        }
    }

    #[test]
    fn mlp_is_deterministic_given_stream() {
        let train = {
            let mut s = RandomStream::new(6, 0);
            sine_training_set(200, 0.1, &mut s)
        };
        let params = PredictorParams {
            mlp_steps: 50,
            ..Default::default()
        };
        let fit_once = || {
            let mut s = RandomStream::new(6, 1);
            fit(PredictorKind::Mlp, &train, &params, &mut s).unwrap()
        };
        let a = fit_once();
        let b = fit_once();
        for &x in &[[0.0, 0.0], [1.0, -1.0], [0.3, 2.0]] {
            assert_eq!(a.predict(x).to_bits(), b.predict(x).to_bits());
        }
    }

    #[test]
    fn mlp_gradient_matches_finite_differences() {
        let mut stream = RandomStream::new(7, 0);
        let train = sine_training_set(50, 0.1, &mut stream);
        for _ in 0..10 {
            let model = MlpModel::init(4, &mut stream);
            let (_, grad) = mlp_loss_and_grad(&model, &train);
            let step = 1e-5;

            // Probe one coordinate of each parameter block.
            let j = stream.index(4);
            let k = stream.index(2);

            let mut plus = model.clone();
            plus.w1[j][k] += step;
            let mut minus = model.clone();
            minus.w1[j][k] -= step;
            let numeric = (mlp_loss_and_grad(&plus, &train).0
                - mlp_loss_and_grad(&minus, &train).0)
                / (2.0 * step);
            let analytic = grad.w1[j][k];
            assert!(
                (numeric - analytic).abs() <= 1e-4 * (1.0 + analytic.abs()),
                "w1 grad mismatch: {numeric} vs {analytic}"
            );

            let mut plus = model.clone();
            plus.w2[j] += step;
            let mut minus = model.clone();
            minus.w2[j] -= step;
            let numeric = (mlp_loss_and_grad(&plus, &train).0
                - mlp_loss_and_grad(&minus, &train).0)
                / (2.0 * step);
            assert!((numeric - grad.w2[j]).abs() <= 1e-4 * (1.0 + grad.w2[j].abs()));

            let mut plus = model.clone();
            plus.b2 += step;
            let mut minus = model.clone();
            minus.b2 -= step;
            let numeric = (mlp_loss_and_grad(&plus, &train).0
                - mlp_loss_and_grad(&minus, &train).0)
                / (2.0 * step);
            assert!((numeric - grad.b2).abs() <= 1e-4 * (1.0 + grad.b2.abs()));
        }
    }

    #[test]
    fn mlp_learns_sine_better_than_linear() {
        let mut stream = RandomStream::new(8, 0);
        let train = sine_training_set(500, 0.0, &mut stream);
        let params = PredictorParams {
            mlp_steps: 2000,
            ..Default::default()
        };
        let mlp = fit(PredictorKind::Mlp, &train, &params, &mut stream).unwrap();
        let linear = fit(PredictorKind::Linear, &train, &params, &mut stream).unwrap();
        let held_out = sine_training_set(500, 0.0, &mut stream);
        let rho2_mlp = empirical_rho2(&predictions(&mlp, &held_out.features), &held_out.targets);
        let rho2_lin = empirical_rho2(&predictions(&linear, &held_out.features), &held_out.targets);
        assert!(
            rho2_mlp > rho2_lin + 0.1,
            "mlp {rho2_mlp} should beat linear {rho2_lin}"
        );
    }

    #[test]
    fn linear_beats_tree_on_affine_targets() {
        let mut wins = 0;
        for seed in 0..10u64 {
            let mut stream = RandomStream::new(100 + seed, 0);
            let mut train = TrainingSet::default();
            for _ in 0..400 {
                let x = [stream.standard_normal(), stream.standard_normal()];
                train.push(x, 1.0 + 2.0 * x[0] - x[1]);
            }
            let mut held_out = TrainingSet::default();
            for _ in 0..400 {
                let x = [stream.standard_normal(), stream.standard_normal()];
                held_out.push(x, 1.0 + 2.0 * x[0] - x[1]);
            }
            let params = PredictorParams::default();
            let lin = fit(PredictorKind::Linear, &train, &params, &mut stream).unwrap();
            let tree = fit(PredictorKind::Tree, &train, &params, &mut stream).unwrap();
            let rho2_lin =
                empirical_rho2(&predictions(&lin, &held_out.features), &held_out.targets);
            let rho2_tree =
                empirical_rho2(&predictions(&tree, &held_out.features), &held_out.targets);
            if rho2_lin >= rho2_tree {
                wins += 1;
            }
        }
        assert!(wins > 5, "linear won only {wins}/10 on affine targets");
    }

    #[test]
    fn rho2_conventions() {
        let r = [1.0, 2.0, 3.0, 4.0];
        assert_abs_diff_eq!(empirical_rho2(&r, &r), 1.0, epsilon = 1e-12);
        let neg: Vec<f64> = r.iter().map(|v| -v).collect();
        assert_abs_diff_eq!(empirical_rho2(&neg, &r), 1.0, epsilon = 1e-12);
        assert_eq!(empirical_rho2(&[2.0; 4], &r), 0.0);
        assert_eq!(empirical_rho2(&[], &[]), 0.0);
    }

    proptest! {
        // rho^2 is invariant under affine maps of the predictions.
        #[test]
        fn rho2_affine_invariance(
            a in prop_oneof![-10.0..-0.01f64, 0.01..10.0f64],
            b in -100.0..100.0f64,
            seed in 0..500u64,
        ) {
            let mut stream = RandomStream::new(seed, 0);
            let rewards: Vec<f64> = (0..50).map(|_| stream.standard_normal()).collect();
            let preds: Vec<f64> = rewards
                .iter()
                .map(|&r| 0.7 * r + 0.3 * stream.standard_normal())
                .collect();
            let mapped: Vec<f64> = preds.iter().map(|&p| a * p + b).collect();
            let base = empirical_rho2(&preds, &rewards);
            let image = empirical_rho2(&mapped, &rewards);
            prop_assert!((base - image).abs() <= 1e-12);
        }
    }
}
