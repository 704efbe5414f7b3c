//! Spreading simulation, rank correlation and timing.

mod kendall;
mod report;
mod sir;
mod timing;

pub use kendall::{average_tau, kendall_tau, JointScoreList};
pub use report::{bench, evaluate, write_csv, write_json, BetaGrid, EvaluationConfig, ReportRow};
pub use sir::{sir_spread, spreading_ranking, SirConfig, SirOutcome};
pub use timing::{timing_by_name, timing_harness, xi, Timing, MIN_REPETITIONS};
