use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bigraph::{BipartiteGraph, NodeType};
use crate::error::{Error, Result};
use crate::measure::{Measure, MeasureOptions};

/// Fewest repetitions the harness will take a median over.
pub const MIN_REPETITIONS: usize = 5;

/// Timing of one measure on one graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Timing {
    pub measure: Measure,
    /// Median wall-clock seconds to score all type-I nodes.
    pub type1_seconds: f64,
    /// Median wall-clock seconds to score all type-II nodes.
    pub type2_seconds: f64,
    /// Average per-node time over the two types.
    pub xi_seconds: f64,
}

/// `ξ = ½ (T_I / n1 + T_II / n2)`.
pub fn xi(type1_seconds: f64, n1: usize, type2_seconds: f64, n2: usize) -> f64 {
    0.5 * (type1_seconds / n1 as f64 + type2_seconds / n2 as f64)
}

fn median(mut samples: Vec<Duration>) -> f64 {
    samples.sort();
    let n = samples.len();
    let mid = if n % 2 == 1 { samples[n / 2] } else { (samples[n / 2 - 1] + samples[n / 2]) / 2 };
    mid.as_secs_f64()
}

fn time_once(f: &impl Fn() -> Result<()>) -> Result<Duration> {
    let start = Instant::now();
    f()?;
    Ok(start.elapsed())
}

fn measure_timing(g: &BipartiteGraph, measure: Measure, reps: usize, opts: &MeasureOptions) -> Result<Timing> {
    let reps = reps.max(MIN_REPETITIONS);
    let (t1, t2) = if measure.is_per_type() {
        let run1 = || measure.compute_type(g, NodeType::Type1, opts).map(drop);
        let run2 = || measure.compute_type(g, NodeType::Type2, opts).map(drop);
        let mut s1 = Vec::with_capacity(reps);
        let mut s2 = Vec::with_capacity(reps);
        for _ in 0..reps {
            s1.push(time_once(&run1)?);
            s2.push(time_once(&run2)?);
        }
        (median(s1), median(s2))
    } else {
        // One pass scores both types, so each type is charged the full time.
        let run = || measure.compute(g, opts).map(drop);
        let samples = (0..reps).map(|_| time_once(&run)).collect::<Result<Vec<_>>>()?;
        let t = median(samples);
        (t, t)
    };
    Ok(Timing { measure, type1_seconds: t1, type2_seconds: t2, xi_seconds: xi(t1, g.n1(), t2, g.n2()) })
}

/// Median-of-`reps` timing of `measure` (at least [`MIN_REPETITIONS`]).
///
/// `threads` sizes a private rayon pool for the measurement; `None` means
/// one thread, so concurrent work does not skew the numbers. Without the
/// `rayon` feature everything is sequential and `threads` is ignored.
pub fn timing_harness(
    g: &BipartiteGraph,
    measure: Measure,
    reps: usize,
    threads: Option<usize>,
    opts: &MeasureOptions,
) -> Result<Timing> {
    if g.n1() == 0 || g.n2() == 0 {
        return Err(Error::invalid("timing needs nodes of both types"));
    }
    #[cfg(feature = "rayon")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.unwrap_or(1))
            .build()
            .map_err(|e| Error::invalid(format!("cannot build thread pool: {e}")))?;
        pool.install(|| measure_timing(g, measure, reps, opts))
    }
    #[cfg(not(feature = "rayon"))]
    {
        let _ = threads;
        measure_timing(g, measure, reps, opts)
    }
}

/// [`timing_harness`] with the measure given by name.
pub fn timing_by_name(g: &BipartiteGraph, measure: &str, reps: usize, opts: &MeasureOptions) -> Result<Timing> {
    timing_harness(g, measure.parse()?, reps, None, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_formula() {
        assert_eq!(xi(2.0, 4, 3.0, 6), 0.5);
    }

    #[test]
    fn median_of_odd_and_even() {
        let d = Duration::from_secs;
        assert_eq!(median(vec![d(3), d(1), d(2)]), 2.0);
        assert_eq!(median(vec![d(4), d(1), d(2), d(3)]), 2.5);
    }

    #[test]
    fn harness_runs_and_rejects_unknown_names() {
        let g = crate::bigraph::generate_coin_toss(8, 4, 0.5, 1).unwrap();
        let t = timing_by_name(&g, "degree", 5, &MeasureOptions::default()).unwrap();
        assert!(t.xi_seconds >= 0.0);
        assert!(timing_by_name(&g, "nonsense", 5, &MeasureOptions::default()).is_err());
    }
}
