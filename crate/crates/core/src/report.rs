//! CSV and JSON writers for experiment outputs.
//!
//! Formats are stable: floats go through Rust's shortest round-trip
//! formatting, rows follow replication order, so identical configurations
//! produce byte-identical files.

use crate::config::SimulationConfig;
use crate::error::Result;
use crate::harness::{PointResult, PointSummary};
use serde::Serialize;
use std::fs::File;
use std::io::Write;
use std::path::Path;

fn fmt(v: f64) -> String {
    format!("{v}")
}

/// Results table: one row per (policy, point, replication).
/// Columns: policy, param_name, param_value, rep, T, final_regret.
pub fn write_results_csv(path: &Path, horizon: u64, points: &[PointResult]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "policy",
        "param_name",
        "param_value",
        "rep",
        "T",
        "final_regret",
    ])?;
    for point in points {
        for trace in &point.traces {
            w.write_record([
                trace.policy.name().to_string(),
                point.param_name.clone(),
                fmt(point.param_value),
                trace.rep.to_string(),
                horizon.to_string(),
                fmt(trace.final_regret()),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Optional per-step trace: policy, rep, t, arm, cum_regret.
pub fn write_traces_csv(path: &Path, points: &[PointResult]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["policy", "rep", "t", "arm", "cum_regret"])?;
    for point in points {
        for trace in &point.traces {
            for (i, (&arm, &regret)) in trace.arms.iter().zip(&trace.cum_regret).enumerate() {
                w.write_record([
                    trace.policy.name().to_string(),
                    trace.rep.to_string(),
                    (i + 1).to_string(),
                    arm.to_string(),
                    fmt(regret),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SummaryFile<'a> {
    config: &'a SimulationConfig,
    results: Vec<&'a PointSummary>,
}

/// Summary JSON: the resolved configuration plus per-point statistics.
pub fn write_summary_json(
    path: &Path,
    config: &SimulationConfig,
    points: &[PointResult],
) -> Result<()> {
    let file = SummaryFile {
        config,
        results: points.iter().flat_map(|p| p.summaries.iter()).collect(),
    };
    let mut out = File::create(path)?;
    serde_json::to_writer_pretty(&mut out, &file)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// One row of the quantile-bound table.
#[derive(Debug, Clone, Copy)]
pub struct QuantileRow {
    pub s: f64,
    pub d: u64,
    pub bound: f64,
    pub quantile: f64,
}

impl QuantileRow {
    pub fn gap(&self) -> f64 {
        self.bound - self.quantile
    }
}

/// Columns: s, d, bound, quantile, gap.
pub fn write_quantile_table_csv(path: &Path, rows: &[QuantileRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["s", "d", "bound", "quantile", "gap"])?;
    for row in rows {
        w.write_record([
            fmt(row.s),
            row.d.to_string(),
            fmt(row.bound),
            fmt(row.quantile),
            fmt(row.gap()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One evaluated point of the coverage grid.
#[derive(Debug, Clone, Copy)]
pub struct CoverageRow {
    pub n: u64,
    pub n_off: u64,
    pub rho: f64,
    pub delta: f64,
    pub replications: u64,
    pub miscoverage: f64,
    pub threshold: f64,
}

impl CoverageRow {
    pub fn pass(&self) -> bool {
        self.miscoverage <= self.threshold
    }
}

/// Columns: n, N, rho, delta, reps, miscoverage, threshold, pass.
pub fn write_coverage_csv(path: &Path, rows: &[CoverageRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "n",
        "N",
        "rho",
        "delta",
        "reps",
        "miscoverage",
        "threshold",
        "pass",
    ])?;
    for row in rows {
        w.write_record([
            row.n.to_string(),
            row.n_off.to_string(),
            fmt(row.rho),
            fmt(row.delta),
            row.replications.to_string(),
            fmt(row.miscoverage),
            fmt(row.threshold),
            row.pass().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
