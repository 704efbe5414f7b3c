use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bigraph::{BipartiteGraph, NodeId, NodeType};
use crate::error::{Error, Result};
use crate::par;

/// Discrete-time spreading parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SirConfig {
    /// Per-step, per-edge infection probability, in `(0, 1]`.
    pub beta: f64,
    /// Number of synchronous steps.
    pub horizon: usize,
    /// Monte-Carlo repetitions per seed node.
    pub runs: usize,
    pub rng_seed: u64,
}

impl Default for SirConfig {
    fn default() -> Self {
        Self { beta: 0.05, horizon: 10, runs: 1000, rng_seed: 0 }
    }
}

impl SirConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::invalid(format!("beta {} is outside (0, 1]", self.beta)));
        }
        if self.horizon == 0 || self.runs == 0 {
            return Err(Error::invalid("horizon and runs must both be at least 1"));
        }
        Ok(())
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The random stream of one run: keyed by (seed, beta, node), with the run
/// index selecting the ChaCha stream. No state is shared between runs, so
/// results do not depend on scheduling.
fn run_rng(cfg: &SirConfig, node: usize, run: usize) -> ChaCha8Rng {
    let mut key = splitmix64(cfg.rng_seed);
    key = splitmix64(key ^ cfg.beta.to_bits());
    key = splitmix64(key ^ node as u64);
    let mut seed = [0u8; 32];
    for (i, chunk) in seed.chunks_mut(8).enumerate() {
        key = splitmix64(key.wrapping_add(i as u64));
        chunk.copy_from_slice(&key.to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(seed);
    rng.set_stream(run as u64);
    rng
}

/// Ever-infected count after one run seeded at `source` (unified index).
///
/// Infected nodes never recover within the horizon. Each step, every
/// infected node tries each susceptible neighbour once with probability
/// `beta`; the infections of a step only become active in the next one.
fn single_run(adj: &[Vec<usize>], source: usize, beta: f64, horizon: usize, rng: &mut ChaCha8Rng) -> usize {
    let mut infected = vec![false; adj.len()];
    infected[source] = true;
    let mut count = 1;
    // Infected nodes that may still have susceptible neighbours.
    let mut active = vec![source];
    let mut fresh = Vec::new();
    for _ in 0..horizon {
        if active.is_empty() {
            break;
        }
        for &x in &active {
            for &w in &adj[x] {
                if !infected[w] && rng.random::<f64>() < beta {
                    infected[w] = true;
                    fresh.push(w);
                }
            }
        }
        // `fresh` nodes were marked immediately, but only spread from the
        // next step on: they are not in `active` during this sweep.
        count += fresh.len();
        active.append(&mut fresh);
        active.retain(|&x| adj[x].iter().any(|&w| !infected[w]));
    }
    count
}

/// Mean and standard error of the ever-infected count over `cfg.runs` runs.
fn spread_stats(adj: &[Vec<usize>], source: usize, cfg: &SirConfig) -> (f64, f64) {
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for run in 0..cfg.runs {
        let mut rng = run_rng(cfg, source, run);
        let c = single_run(adj, source, cfg.beta, cfg.horizon, &mut rng) as f64;
        sum += c;
        sum_sq += c * c;
    }
    let n = cfg.runs as f64;
    let mean = sum / n;
    let var = if cfg.runs > 1 { ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
    (mean, (var / n).sqrt())
}

/// Mean number of ever-infected nodes (seed included) at the horizon.
pub fn sir_spread(g: &BipartiteGraph, seed: NodeId, cfg: &SirConfig) -> Result<f64> {
    cfg.validate()?;
    if seed.index >= g.count(seed.ty) {
        return Err(Error::invalid(format!("seed node {} {} does not exist", seed.ty, seed.index)));
    }
    let adj = g.unified_adjacency();
    Ok(spread_stats(&adj, g.unified(seed), cfg).0)
}

/// Spreading efficiency of every node of one type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SirOutcome {
    pub node_type: NodeType,
    /// Mean ever-infected count per seed node.
    pub efficiency: Vec<f64>,
    /// Standard error of each mean.
    pub std_error: Vec<f64>,
    pub config: SirConfig,
}

/// Runs the simulation from every node of `node_type`, in parallel over seeds.
pub fn spreading_ranking(g: &BipartiteGraph, node_type: NodeType, cfg: &SirConfig) -> Result<SirOutcome> {
    cfg.validate()?;
    let adj = g.unified_adjacency();
    let stats =
        par::map_range(g.count(node_type), |i| spread_stats(&adj, g.unified(NodeId { ty: node_type, index: i }), cfg));
    let (efficiency, std_error) = stats.into_iter().unzip();
    Ok(SirOutcome { node_type, efficiency, std_error, config: *cfg })
}
