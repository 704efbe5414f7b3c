use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::bigraph::{BipartiteGraph, NodeType};
use crate::error::{Error, Result};
use crate::measure::{Measure, MeasureOptions};

use super::kendall::{average_tau, kendall_tau};
use super::sir::{spreading_ranking, SirConfig};
use super::timing::{timing_harness, Timing};

/// Evenly spaced infection probabilities `start, start + step, ..., ≤ stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Default for BetaGrid {
    fn default() -> Self {
        Self { start: 0.01, stop: 0.1, step: 0.01 }
    }
}

impl BetaGrid {
    pub fn single(beta: f64) -> Self {
        Self { start: beta, stop: beta, step: 1.0 }
    }

    /// Grid points, rounded to 12 decimals so `0.01 + 2 * 0.01` prints as `0.03`.
    pub fn values(&self) -> Result<Vec<f64>> {
        let in_range = |b: f64| b > 0.0 && b <= 1.0;
        if !in_range(self.start)
            || !in_range(self.stop)
            || self.stop < self.start
            || self.step.is_nan()
            || self.step <= 0.0
        {
            return Err(Error::invalid(format!(
                "beta grid {}..{} step {} must satisfy 0 < start <= stop <= 1 and step > 0",
                self.start, self.stop, self.step
            )));
        }
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        Ok((0..count).map(|i| ((self.start + i as f64 * self.step) * 1e12).round() / 1e12).collect())
    }
}

/// Settings for the ranking-versus-spreading comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationConfig {
    pub betas: BetaGrid,
    pub horizon: usize,
    pub runs: usize,
    pub rng_seed: u64,
    pub options: MeasureOptions,
    /// Repetitions for a per-measure timing column; `None` leaves it empty,
    /// which keeps reports byte-identical across reruns.
    pub timing_repetitions: Option<usize>,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        Self {
            betas: BetaGrid::default(),
            horizon: 10,
            runs: 1000,
            rng_seed: 0,
            options: MeasureOptions::default(),
            timing_repetitions: None,
        }
    }
}

/// One point of a tau-versus-beta curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub measure: Measure,
    pub beta: f64,
    pub tau_type1: f64,
    pub tau_type2: f64,
    pub tau_avg: f64,
    pub xi_seconds: Option<f64>,
}

/// Kendall tau of every measure against simulated spreading, per beta.
///
/// Rows come out measure by measure in the given order, betas ascending.
/// The simulation for a beta is shared by all measures.
pub fn evaluate(g: &BipartiteGraph, measures: &[Measure], cfg: &EvaluationConfig) -> Result<Vec<ReportRow>> {
    if measures.is_empty() {
        return Err(Error::invalid("no measures requested"));
    }
    if g.n1() < 2 || g.n2() < 2 {
        return Err(Error::invalid("rank correlation needs at least two nodes of each type"));
    }
    let betas = cfg.betas.values()?;
    let mut spreading = Vec::with_capacity(betas.len());
    for &beta in &betas {
        let sir = SirConfig { beta, horizon: cfg.horizon, runs: cfg.runs, rng_seed: cfg.rng_seed };
        log::info!("simulating spreading at beta {beta}");
        let y1 = spreading_ranking(g, NodeType::Type1, &sir)?.efficiency;
        let y2 = spreading_ranking(g, NodeType::Type2, &sir)?.efficiency;
        spreading.push((y1, y2));
    }
    let mut rows = Vec::with_capacity(measures.len() * betas.len());
    for &measure in measures {
        let (s1, s2) = measure.compute(g, &cfg.options)?;
        let xi_seconds = match cfg.timing_repetitions {
            Some(reps) => Some(timing_harness(g, measure, reps, None, &cfg.options)?.xi_seconds),
            None => None,
        };
        for (&beta, (y1, y2)) in betas.iter().zip(&spreading) {
            let tau_type1 = kendall_tau(s1.scores(), y1)?;
            let tau_type2 = kendall_tau(s2.scores(), y2)?;
            rows.push(ReportRow {
                measure,
                beta,
                tau_type1,
                tau_type2,
                tau_avg: average_tau(tau_type1, tau_type2),
                xi_seconds,
            });
        }
    }
    Ok(rows)
}

/// Timing table for several measures.
pub fn bench(g: &BipartiteGraph, measures: &[Measure], reps: usize, opts: &MeasureOptions) -> Result<Vec<Timing>> {
    if measures.is_empty() {
        return Err(Error::invalid("no measures requested"));
    }
    measures.iter().map(|&m| timing_harness(g, m, reps, None, opts)).collect()
}

/// Pretty-printed JSON array.
pub fn write_json<T: Serialize, W: Write>(rows: &[T], mut writer: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut writer, rows)?;
    writer.write_all(b"\n")?;
    Ok(())
}

/// CSV with a header row taken from the field names. Missing values are empty.
pub fn write_csv<T: Serialize, W: Write>(rows: &[T], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
