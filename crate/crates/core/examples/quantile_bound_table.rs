//! The closed-form quantile bound versus the exact t-quantile.
//!
//! The unknown-variance baseline scales its exploration bonus with
//! sqrt(d (s^{2/(d-1)} - 1)), a closed-form upper bound on the t-quantile
//! q_d(1/(2s sqrt(log s))). The gap is what the assisted policy pockets by
//! computing the quantile exactly. Uses d = floor(log s) per point.
//!
//! Run with: cargo run --example quantile_bound_table

use mla_bandit::{significance_level, t_quantile_upper_bound, TDist};

fn main() -> mla_bandit::Result<()> {
    println!(
        "{:>9} {:>4} {:>10} {:>10} {:>8} {:>7}",
        "s", "d", "quantile", "bound", "gap", "ratio"
    );
    for exp in 1..=6 {
        let s = 10f64.powi(exp);
        let d = (s.ln().floor() as u64).max(2);
        let quantile = TDist::new(d)?.upper_quantile(significance_level(s))?;
        let bound = t_quantile_upper_bound(d, s)?;
        println!(
            "{:>9} {:>4} {:>10.4} {:>10.4} {:>8.4} {:>7.3}",
            s,
            d,
            quantile,
            bound,
            bound - quantile,
            bound / quantile
        );
    }
    Ok(())
}
