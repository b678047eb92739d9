//! Per-arm sufficient statistics and the ML-assisted mean estimator.
//!
//! An arm's online history is a stream of (reward, surrogate) pairs; its
//! offline history is a pool of surrogate values observed before any pull.
//! [`ArmStatistics`] keeps O(1) running sums of both. [`MlaEstimate`]
//! derives from those sums the shrinkage coefficient `lambda`, the
//! debiased mean, the surrogate-mean inflation factor `z`, and the two
//! variance estimates that scale the confidence bound:
//!
//! * `mla_mean = mean(R) - lambda * (mean(Rhat) - offline_mean(Rhat))`,
//!   with `lambda = (N/(n+N)) * cov(R, Rhat) / var(Rhat)`;
//! * equivalently, the intercept of the least-squares fit of R on the
//!   surrogate centered at the pooled (online + offline) surrogate mean;
//! * `z = 1 + n (mean(Rhat) - pooled_mean(Rhat))^2 / sum((Rhat - mean(Rhat))^2)`;
//! * `sigma_r2` is the usual 1/(n-1) reward variance and `sigma_eps2` the
//!   1/(n-2) residual variance of the regression.
//!
//! Two interval widths derive from those variances. The confidence bound
//! used for coverage reporting scales the *sum* of the two standard
//! errors by one t-quantile (a union bound over the two independent error
//! components). The arm-selection index pools the variances first,
//! `sqrt(sigma_r2/(n+N) + z sigma_eps2/n)`. Both use the t-quantile with
//! n-2 degrees of freedom at level `1/(2t sqrt(log t))`.

use crate::error::{Error, Result};
use crate::student_t::{significance_level, TDist};

/// Running sufficient statistics for one arm.
///
/// ```
/// use mla_bandit::ArmStatistics;
///
/// let mut stats = ArmStatistics::new();
/// for (r, rhat) in [(0.0, 0.0), (2.0, 2.0), (1.0, 4.0)] {
///     stats.observe(r, rhat);
/// }
/// stats.ingest_offline([4.0]);
/// let estimate = stats.estimate().unwrap();
/// assert_eq!(estimate.lambda, 0.0625);
/// assert_eq!(estimate.mla_mean, 1.125);
/// ```
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ArmStatistics {
    n: u64,
    n_off: u64,
    sum_r: f64,
    sum_rhat: f64,
    sum_r2: f64,
    sum_rhat2: f64,
    sum_r_rhat: f64,
    sum_rhat_off: f64,
}

impl ArmStatistics {
    pub fn new() -> Self {
        Self::default()
    }

    /// Online pull count.
    pub fn pulls(&self) -> u64 {
        self.n
    }

    /// Offline surrogate count.
    pub fn offline_count(&self) -> u64 {
        self.n_off
    }

    /// Sample mean of online rewards.
    pub fn reward_mean(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.sum_r / self.n as f64
        }
    }

    /// Sample mean of online surrogates.
    pub fn surrogate_mean(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.sum_rhat / self.n as f64
        }
    }

    /// Mean of the offline surrogate pool.
    pub fn offline_mean(&self) -> f64 {
        if self.n_off == 0 {
            0.0
        } else {
            self.sum_rhat_off / self.n_off as f64
        }
    }

    /// Pooled mean of online and offline surrogates. Falls back to the
    /// online mean when no offline data exists.
    pub fn pooled_surrogate_mean(&self) -> f64 {
        let total = self.n + self.n_off;
        if total == 0 {
            0.0
        } else {
            (self.sum_rhat + self.sum_rhat_off) / total as f64
        }
    }

    /// Records one online observation.
    pub fn observe(&mut self, r: f64, rhat: f64) {
        self.n += 1;
        self.sum_r += r;
        self.sum_rhat += rhat;
        self.sum_r2 += r * r;
        self.sum_rhat2 += rhat * rhat;
        self.sum_r_rhat += r * rhat;
    }

    /// Adds offline surrogate values to the pool.
    pub fn ingest_offline<I: IntoIterator<Item = f64>>(&mut self, surrogates: I) {
        for s in surrogates {
            self.n_off += 1;
            self.sum_rhat_off += s;
        }
    }

    /// Centered sum of squares of online rewards, floored at zero to
    /// absorb round-off.
    fn s_rr(&self) -> f64 {
        (self.sum_r2 - self.sum_r * self.sum_r / self.n as f64).max(0.0)
    }

    /// Centered sum of squares of online surrogates, floored at zero.
    fn s_xx(&self) -> f64 {
        (self.sum_rhat2 - self.sum_rhat * self.sum_rhat / self.n as f64).max(0.0)
    }

    /// Centered cross sum of rewards and surrogates.
    fn s_xr(&self) -> f64 {
        self.sum_r_rhat - self.sum_r * self.sum_rhat / self.n as f64
    }

    /// Biased (1/n) reward variance, as used by the variance-adaptive
    /// baseline index.
    pub fn reward_variance_biased(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.s_rr() / self.n as f64
        }
    }

    /// Computes the ML-assisted estimate from the current sums.
    ///
    /// Needs at least 3 pulls (the residual variance divides by n-2) and
    /// non-constant online surrogates. With an empty offline pool the
    /// estimator degrades gracefully: `lambda = 0`, `z = 1`, and the mean
    /// reduces to the plain sample mean.
    pub fn estimate(&self) -> Result<MlaEstimate> {
        if self.n < 3 {
            return Err(Error::InsufficientData(format!(
                "ML-assisted estimate needs at least 3 pulls, got {}",
                self.n
            )));
        }
        let n = self.n as f64;
        let s_xx = self.s_xx();
        if s_xx <= 0.0 {
            return Err(Error::DegenerateRegressor);
        }
        let s_rr = self.s_rr();
        let s_xr = self.s_xr();
        let slope = s_xr / s_xx;

        let lambda = if self.n_off == 0 {
            0.0
        } else {
            self.n_off as f64 / (n + self.n_off as f64) * slope
        };
        let mla_mean = if self.n_off == 0 {
            self.reward_mean()
        } else {
            self.reward_mean() - lambda * (self.surrogate_mean() - self.offline_mean())
        };
        let pooled_mean = self.pooled_surrogate_mean();
        let gap = self.surrogate_mean() - pooled_mean;
        let z = 1.0 + n * gap * gap / s_xx;
        let sigma_r2 = s_rr / (n - 1.0);
        let rss = (s_rr - s_xr * s_xr / s_xx).max(0.0);
        let sigma_eps2 = rss / (n - 2.0);

        Ok(MlaEstimate {
            lambda,
            mla_mean,
            pooled_mean,
            z,
            sigma_r2,
            sigma_eps2,
            slope,
        })
    }

    /// Fallback estimate for the zero-surrogate-variance case: the
    /// surrogates carry no signal, so treat `lambda = 0`, `z = 1`, and
    /// charge the full reward variance to the residual term.
    pub fn fallback_estimate(&self) -> Result<MlaEstimate> {
        if self.n < 3 {
            return Err(Error::InsufficientData(format!(
                "fallback estimate needs at least 3 pulls, got {}",
                self.n
            )));
        }
        let n = self.n as f64;
        let s_rr = self.s_rr();
        let sigma_r2 = s_rr / (n - 1.0);
        Ok(MlaEstimate {
            lambda: 0.0,
            mla_mean: self.reward_mean(),
            pooled_mean: self.pooled_surrogate_mean(),
            z: 1.0,
            sigma_r2,
            sigma_eps2: s_rr / (n - 2.0),
            slope: 0.0,
        })
    }
}

/// Derived quantities of the ML-assisted estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlaEstimate {
    /// Shrinkage coefficient applied to the surrogate mean gap.
    pub lambda: f64,
    /// Debiased mean reward estimate.
    pub mla_mean: f64,
    /// Pooled online + offline surrogate mean.
    pub pooled_mean: f64,
    /// Inflation factor for the residual variance term; always >= 1.
    pub z: f64,
    /// Reward sample variance, 1/(n-1) normalization.
    pub sigma_r2: f64,
    /// Residual variance of the regression, 1/(n-2) normalization.
    pub sigma_eps2: f64,
    /// Regression slope of rewards on surrogates.
    pub slope: f64,
}

impl MlaEstimate {
    /// Width of the union-bound confidence interval per unit quantile:
    /// sqrt(sigma_r2/(n+N)) + sqrt(z sigma_eps2/n). This is the reported
    /// interval form; it bounds each error component separately and is
    /// conservative by construction.
    pub fn standard_error_width(&self, n: u64, n_off: u64) -> f64 {
        let nf = n as f64;
        (self.sigma_r2 / (nf + n_off as f64)).sqrt() + (self.z * self.sigma_eps2 / nf).sqrt()
    }

    /// Pooled standard error sqrt(sigma_r2/(n+N) + z sigma_eps2/n): the
    /// two error components are independent, so their variances add. The
    /// selection index uses this tighter width; the summed-roots form
    /// stays for interval reporting.
    pub fn combined_standard_error(&self, n: u64, n_off: u64) -> f64 {
        let nf = n as f64;
        (self.sigma_r2 / (nf + n_off as f64) + self.z * self.sigma_eps2 / nf).sqrt()
    }

    /// Upper confidence bound at significance `delta` for an arm with the
    /// given online/offline counts: the 1-delta t-quantile with n-2
    /// degrees of freedom times [`Self::standard_error_width`].
    pub fn upper_bound(&self, n: u64, n_off: u64, delta: f64) -> Result<f64> {
        let quantile = TDist::new(n - 2)?.upper_quantile(delta)?;
        Ok(self.mla_mean + quantile * self.standard_error_width(n, n_off))
    }

    /// Arm-selection index at significance `delta`: the 1-delta t-quantile
    /// with n-2 degrees of freedom times [`Self::combined_standard_error`].
    pub fn ucb_index(&self, n: u64, n_off: u64, delta: f64) -> Result<f64> {
        let quantile = TDist::new(n - 2)?.upper_quantile(delta)?;
        Ok(self.mla_mean + quantile * self.combined_standard_error(n, n_off))
    }
}

/// UCB index of the ML-assisted policy at time step `t`: the estimate plus
/// the pooled standard error scaled by the t-quantile at significance
/// 1/(2t sqrt(log t)).
pub fn mla_ucb_index(stats: &ArmStatistics, t: u64) -> Result<f64> {
    if stats.pulls() < 4 {
        return Err(Error::InsufficientData(format!(
            "index needs at least 4 pulls, got {}",
            stats.pulls()
        )));
    }
    if t < 2 {
        return Err(Error::Domain(format!("index needs t >= 2, got {t}")));
    }
    let estimate = stats.estimate()?;
    estimate.ucb_index(
        stats.pulls(),
        stats.offline_count(),
        significance_level(t as f64),
    )
}

/// Intercept of the least-squares fit of rewards on surrogates centered at
/// the pooled surrogate mean, solved from the raw samples via the 2x2
/// normal equations. Independent of the incremental-sums path; used as an
/// oracle for `mla_mean`.
pub fn ols_intercept(online_pairs: &[(f64, f64)], offline_surrogates: &[f64]) -> Result<f64> {
    let n = online_pairs.len();
    if n < 3 {
        return Err(Error::InsufficientData(format!(
            "OLS oracle needs at least 3 online pairs, got {n}"
        )));
    }
    let total = n + offline_surrogates.len();
    let pooled_mean = (online_pairs.iter().map(|p| p.1).sum::<f64>()
        + offline_surrogates.iter().sum::<f64>())
        / total as f64;

    // Normal equations for r ~ alpha + beta * (rhat - pooled_mean).
    let mut sx = 0.0;
    let mut sxx = 0.0;
    let mut sr = 0.0;
    let mut sxr = 0.0;
    for &(r, rhat) in online_pairs {
        let x = rhat - pooled_mean;
        sx += x;
        sxx += x * x;
        sr += r;
        sxr += x * r;
    }
    let nf = n as f64;
    let det = nf * sxx - sx * sx;
    if det.abs() <= f64::EPSILON * nf * sxx.max(1.0) {
        return Err(Error::DegenerateRegressor);
    }
    Ok((sr * sxx - sx * sxr) / det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // Two tiny hand-checked datasets reused across tests.
    fn dataset_one() -> ArmStatistics {
        let mut s = ArmStatistics::new();
        for (r, rhat) in [(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)] {
            s.observe(r, rhat);
        }
        s.ingest_offline([2.0, 2.0]);
        s
    }

    fn dataset_two() -> ArmStatistics {
        let mut s = ArmStatistics::new();
        for (r, rhat) in [(0.0, 0.0), (2.0, 2.0), (1.0, 4.0)] {
            s.observe(r, rhat);
        }
        s.ingest_offline([4.0]);
        s
    }

    #[test]
    fn observe_accumulates_sums() {
        let mut s = ArmStatistics::new();
        s.observe(1.0, 1.0);
        assert_eq!(s.n, 1);
        assert_eq!(s.sum_r, 1.0);
        assert_eq!(s.sum_rhat, 1.0);
        assert_eq!(s.sum_r2, 1.0);
        assert_eq!(s.sum_rhat2, 1.0);
        assert_eq!(s.sum_r_rhat, 1.0);

        let d1 = dataset_one();
        assert_eq!(d1.n, 3);
        assert_eq!(d1.n_off, 2);
        assert_eq!(d1.sum_r, 6.0);
        assert_eq!(d1.sum_rhat, 6.0);
        assert_eq!(d1.sum_rhat_off, 4.0);

        let d2 = dataset_two();
        assert_eq!(d2.n, 3);
        assert_eq!(d2.n_off, 1);
        assert_eq!(d2.sum_r, 3.0);
        assert_eq!(d2.sum_rhat, 6.0);
        assert_eq!(d2.sum_rhat_off, 4.0);
    }

    #[test]
    fn ingest_offline_edge_cases() {
        let mut s = ArmStatistics::new();
        s.ingest_offline([]);
        assert_eq!(s.offline_count(), 0);
        s.ingest_offline([2.0, 2.0]);
        assert_eq!(s.offline_count(), 2);
        assert_eq!(s.sum_rhat_off, 4.0);

        // Monte Carlo sanity: the pool mean tracks the draw mean.
        let mut stream = crate::rng::RandomStream::new(11, 0);
        let mut s = ArmStatistics::new();
        s.ingest_offline((0..100).map(|_| 1.0 + stream.standard_normal()));
        assert_eq!(s.offline_count(), 100);
        assert!((s.offline_mean() - 1.0).abs() < 0.4);
    }

    #[test]
    fn estimate_matches_hand_computation() {
        let e = dataset_one().estimate().unwrap();
        assert_abs_diff_eq!(e.lambda, 0.4, epsilon = 1e-12);
        assert_abs_diff_eq!(e.mla_mean, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.z, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.sigma_r2, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.sigma_eps2, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.slope, 1.0, epsilon = 1e-12);

        let e = dataset_two().estimate().unwrap();
        assert_abs_diff_eq!(e.lambda, 0.0625, epsilon = 1e-12);
        assert_abs_diff_eq!(e.mla_mean, 1.125, epsilon = 1e-12);
        assert_abs_diff_eq!(e.pooled_mean, 2.5, epsilon = 1e-12);
        assert_abs_diff_eq!(e.z, 1.09375, epsilon = 1e-12);
        assert_abs_diff_eq!(e.sigma_r2, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.sigma_eps2, 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(e.slope, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn zero_covariance_reduces_to_sample_mean() {
        // Surrogates vary but are orthogonal to rewards.
        let mut s = ArmStatistics::new();
        for (r, rhat) in [(1.0, -1.0), (1.0, 1.0), (1.0, 0.0), (3.0, 0.0)] {
            s.observe(r, rhat);
        }
        s.ingest_offline([5.0, 5.0]);
        let e = s.estimate().unwrap();
        assert_abs_diff_eq!(e.slope, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.lambda, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.mla_mean, s.reward_mean(), epsilon = 1e-12);
    }

    #[test]
    fn empty_pool_reduces_to_sample_mean() {
        let mut s = ArmStatistics::new();
        for (r, rhat) in [(0.0, 0.0), (2.0, 2.0), (1.0, 4.0)] {
            s.observe(r, rhat);
        }
        let e = s.estimate().unwrap();
        assert_eq!(e.lambda, 0.0);
        assert_abs_diff_eq!(e.mla_mean, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.z, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn estimate_error_paths() {
        let mut s = ArmStatistics::new();
        s.observe(1.0, 1.0);
        s.observe(2.0, 2.0);
        assert!(matches!(s.estimate(), Err(Error::InsufficientData(_))));

        // Constant surrogates: degenerate regressor.
        let mut s = ArmStatistics::new();
        for r in [1.0, 2.0, 3.0] {
            s.observe(r, 7.0);
        }
        assert!(matches!(s.estimate(), Err(Error::DegenerateRegressor)));

        // The fallback covers exactly that case.
        let e = s.fallback_estimate().unwrap();
        assert_eq!(e.lambda, 0.0);
        assert_eq!(e.z, 1.0);
        assert_abs_diff_eq!(e.mla_mean, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.sigma_eps2, e.sigma_r2 * 2.0 / 1.0, epsilon = 1e-12);
    }

    #[test]
    fn ols_oracle_matches_hand_values() {
        assert_abs_diff_eq!(
            ols_intercept(&[(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)], &[2.0, 2.0]).unwrap(),
            2.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            ols_intercept(&[(0.0, 0.0), (2.0, 2.0), (1.0, 4.0)], &[4.0]).unwrap(),
            1.125,
            epsilon = 1e-12
        );
        // With no offline data the regressor is centered, so the intercept
        // is the reward mean even when the surrogate replays the reward.
        let pairs = [(0.5, 0.5), (1.5, 1.5), (-0.25, -0.25), (2.0, 2.0)];
        let mean = pairs.iter().map(|p| p.0).sum::<f64>() / pairs.len() as f64;
        assert_abs_diff_eq!(ols_intercept(&pairs, &[]).unwrap(), mean, epsilon = 1e-12);
    }

    #[test]
    fn index_matches_quantile_algebra() {
        // Dataset one padded to four pulls.
        let mut s = dataset_one();
        s.observe(2.0, 2.0);
        let e = s.estimate().unwrap();
        assert_abs_diff_eq!(e.lambda, 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.mla_mean, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.sigma_r2, 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.sigma_eps2, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.z, 1.0, epsilon = 1e-12);

        let t = 21;
        let delta = significance_level(t as f64);
        assert_abs_diff_eq!(delta, 1.0 / (42.0 * (21f64).ln().sqrt()), epsilon = 1e-15);
        let q = TDist::new(2).unwrap().upper_quantile(delta).unwrap();
        // t_2 quantile closed form as an independent check.
        let expect_q = (1.0 - 2.0 * delta) * (2.0 / (4.0 * delta * (1.0 - delta))).sqrt();
        assert_abs_diff_eq!(q, expect_q, epsilon = 1e-9);

        let index = mla_ucb_index(&s, t).unwrap();
        assert_abs_diff_eq!(index, 2.0 + q * (1.0 / 3.0), epsilon = 1e-10);
    }

    #[test]
    fn index_zero_variance_collapses_to_mean() {
        let mut s = ArmStatistics::new();
        for (r, rhat) in [(2.0, 1.0), (2.0, 2.0), (2.0, 3.0), (2.0, 4.0)] {
            s.observe(r, rhat);
        }
        let idx = mla_ucb_index(&s, 10).unwrap();
        assert_abs_diff_eq!(idx, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn index_nondecreasing_in_time() {
        let mut s = dataset_two();
        s.observe(1.5, 1.0);
        let mut prev = f64::NEG_INFINITY;
        for t in [2, 3, 5, 10, 100, 10_000] {
            let idx = mla_ucb_index(&s, t).unwrap();
            assert!(idx >= prev, "index decreased at t={t}");
            prev = idx;
        }
    }

    #[test]
    fn index_preconditions() {
        let s = dataset_one(); // only 3 pulls
        assert!(matches!(
            mla_ucb_index(&s, 10),
            Err(Error::InsufficientData(_))
        ));
        let mut s = dataset_one();
        s.observe(2.0, 2.0);
        assert!(matches!(mla_ucb_index(&s, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn cauchy_schwarz_invariant_random_streams() {
        let mut stream = crate::rng::RandomStream::new(5, 9);
        for _ in 0..200 {
            let mut s = ArmStatistics::new();
            let n = 2 + stream.index(40);
            for _ in 0..n {
                let r = stream.standard_normal() * 3.0 + 1.0;
                let rhat = 0.5 * r + stream.standard_normal();
                s.observe(r, rhat);
            }
            let lhs = s.s_xr() * s.s_xr();
            let rhs = s.s_rr() * s.s_xx();
            assert!(lhs <= rhs * (1.0 + 1e-9) + 1e-12);
        }
    }

    #[test]
    fn shrinkage_never_hurts_with_informative_surrogates() {
        // At n = 10, N = 50, rho = 0.5 the assisted estimator's Monte
        // Carlo variance must not exceed the plain sample mean's by more
        // than five standard errors.
        let spec = crate::env::GaussianArmSpec::new(0.0, 4.0, 1.0, 2.0, 0.5).unwrap();
        let reps = 20_000;
        let mut assisted = Vec::with_capacity(reps);
        let mut plain = Vec::with_capacity(reps);
        for rep in 0..reps {
            let mut stream = crate::rng::RandomStream::new(314, rep as u64);
            let mut stats = ArmStatistics::new();
            for _ in 0..10 {
                let (r, rhat) = spec.sample(&mut stream);
                stats.observe(r, rhat);
            }
            stats.ingest_offline((0..50).map(|_| spec.sample_surrogate(&mut stream)));
            assisted.push(stats.estimate().unwrap().mla_mean);
            plain.push(stats.reward_mean());
        }
        let m = reps as f64;
        let moments = |xs: &[f64]| {
            let mean = xs.iter().sum::<f64>() / m;
            let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1.0);
            let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / m;
            (var, ((m4 - var * var * (m - 3.0) / (m - 1.0)) / m).sqrt())
        };
        let (var_assisted, se) = moments(&assisted);
        let (var_plain, _) = moments(&plain);
        assert!(
            var_assisted <= var_plain + 5.0 * se,
            "assisted variance {var_assisted} above plain {var_plain} (SE {se})"
        );
    }

    #[test]
    fn estimate_invariants_random_streams() {
        let mut stream = crate::rng::RandomStream::new(8, 2);
        for _ in 0..300 {
            let mut s = ArmStatistics::new();
            let n = 3 + stream.index(30);
            for _ in 0..n {
                let r = stream.standard_normal();
                let rhat = -2.0 + 0.8 * r + 0.3 * stream.standard_normal();
                s.observe(r, rhat);
            }
            let n_off = stream.index(50);
            s.ingest_offline((0..n_off).map(|_| -2.0 + stream.standard_normal()));
            let e = s.estimate().unwrap();
            assert!(e.z >= 1.0);
            assert!(e.sigma_r2 >= 0.0);
            assert!(e.sigma_eps2 >= 0.0);
            let nf = s.pulls() as f64;
            assert!(e.sigma_eps2 <= e.sigma_r2 * (nf - 1.0) / (nf - 2.0) * (1.0 + 1e-9));
        }
    }
}
