use crate::bigraph::{BipartiteGraph, NodeType};
use crate::error::{Error, Result};
use crate::scores::CentralityScores;

/// Stopping rule for the power iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIterationConfig {
    /// Iteration stops once successive iterates differ by less than this (L2).
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for PowerIterationConfig {
    fn default() -> Self {
        Self { tolerance: 1e-10, max_iterations: 1000 }
    }
}

impl PowerIterationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 || self.max_iterations == 0 {
            return Err(Error::invalid("power iteration needs tolerance > 0 and max_iterations >= 1"));
        }
        Ok(())
    }
}

/// Converged eigenvector centrality.
#[derive(Debug, Clone)]
pub struct Eigenvector {
    pub type1: CentralityScores,
    pub type2: CentralityScores,
    /// Dominant eigenvalue of the full adjacency matrix.
    pub eigenvalue: f64,
    pub iterations: usize,
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

/// Dominant eigenvector of the `(n1 + n2)`-node adjacency matrix.
///
/// A plain power iteration on a bipartite adjacency matrix oscillates
/// (`-λ` is also an eigenvalue), so the two sides are updated alternately:
/// `u ← B v`, `v ← Bᵀ u`, each normalised. The fixed point gives
/// `B v = λ u`, `Bᵀ u = λ v`, so `(u, v) / √2` is a unit eigenvector of the
/// full matrix.
pub fn eigenvector_centrality(g: &BipartiteGraph, cfg: &PowerIterationConfig) -> Result<Eigenvector> {
    cfg.validate()?;
    if g.n_edges() == 0 {
        return Err(Error::invalid("eigenvector centrality needs at least one edge"));
    }
    let (n1, n2) = (g.n1(), g.n2());
    let mut u = vec![1.0 / (n1 as f64).sqrt(); n1];
    let mut v = vec![1.0 / (n2 as f64).sqrt(); n2];
    let mut residual = f64::INFINITY;
    for iteration in 1..=cfg.max_iterations {
        let mut nu: Vec<f64> = (0..n1).map(|i| g.neighbors1(i).iter().map(|&j| v[j]).sum()).collect();
        normalize(&mut nu);
        let mut nv: Vec<f64> = (0..n2).map(|j| g.neighbors2(j).iter().map(|&i| nu[i]).sum()).collect();
        normalize(&mut nv);
        let change = u.iter().zip(&nu).chain(v.iter().zip(&nv)).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
        // Iterates are stored per side with unit norm; the combined vector is
        // scaled by 1/√2.
        residual = (change / 2.0).sqrt();
        u = nu;
        v = nv;
        if residual < cfg.tolerance {
            let eigenvalue: f64 = g.edges().iter().map(|&(i, j)| u[i] * v[j]).sum();
            let scale = std::f64::consts::FRAC_1_SQRT_2;
            return Ok(Eigenvector {
                type1: CentralityScores::new(NodeType::Type1, u.iter().map(|x| x * scale).collect()),
                type2: CentralityScores::new(NodeType::Type2, v.iter().map(|x| x * scale).collect()),
                eigenvalue,
                iterations: iteration,
            });
        }
    }
    Err(Error::Convergence { iterations: cfg.max_iterations, residual })
}
