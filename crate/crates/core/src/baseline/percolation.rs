use crate::bigraph::{BipartiteGraph, NodeType};
use crate::error::{Error, Result};
use crate::par;
use crate::scores::CentralityScores;

use super::paths::{ShortestPaths, SOURCE_CHUNK};

/// Static percolation state of every node, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PercolationConfig {
    type1: Vec<f64>,
    type2: Vec<f64>,
}

impl PercolationConfig {
    pub fn new(type1: Vec<f64>, type2: Vec<f64>) -> Result<Self> {
        if let Some(bad) = type1.iter().chain(&type2).find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::invalid(format!("percolation state {bad} is outside [0, 1]")));
        }
        Ok(Self { type1, type2 })
    }

    /// Every node in the same state.
    pub fn uniform(g: &BipartiteGraph, state: f64) -> Result<Self> {
        Self::new(vec![state; g.n1()], vec![state; g.n2()])
    }

    pub fn state(&self, ty: NodeType, index: usize) -> f64 {
        match ty {
            NodeType::Type1 => self.type1[index],
            NodeType::Type2 => self.type2[index],
        }
    }
}

/// Percolation centrality at a single time slice:
/// `PC(w) = Σ_{s ≠ w ≠ t} (σ_st(w) / σ_st) · x_s / (Σ_{v ≠ w} x_v)`
/// over ordered pairs of nodes of either type.
pub fn percolation_centrality(
    g: &BipartiteGraph,
    cfg: &PercolationConfig,
) -> Result<(CentralityScores, CentralityScores)> {
    if cfg.type1.len() != g.n1() || cfg.type2.len() != g.n2() {
        return Err(Error::invalid("percolation states do not match the graph's node counts"));
    }
    let adj = g.unified_adjacency();
    let n = adj.len();
    let x: Vec<f64> = cfg.type1.iter().chain(&cfg.type2).copied().collect();
    let total: f64 = x.iter().sum();
    let parts = par::map_chunks(n, SOURCE_CHUNK, |sources| {
        let mut acc = vec![0.0; n];
        for s in sources {
            if x[s] == 0.0 {
                continue;
            }
            let delta = ShortestPaths::from(&adj, s).dependencies(&adj, |_| 1.0);
            for (a, d) in acc.iter_mut().zip(delta) {
                *a += x[s] * d;
            }
        }
        acc
    });
    let weighted = par::sum_in_order(parts, n);
    let scores: Vec<f64> = weighted
        .iter()
        .zip(&x)
        .map(|(&w, &xw)| {
            let rest = total - xw;
            if rest > 0.0 {
                w / rest
            } else {
                0.0
            }
        })
        .collect();
    Ok((
        CentralityScores::new(NodeType::Type1, scores[..g.n1()].to_vec()),
        CentralityScores::new(NodeType::Type2, scores[g.n1()..].to_vec()),
    ))
}
