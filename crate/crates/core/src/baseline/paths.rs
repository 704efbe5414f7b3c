use std::collections::VecDeque;

use crate::bigraph::{BipartiteGraph, NodeType};
use crate::par;
use crate::scores::CentralityScores;

/// Sources per work unit. Fixed so that partial sums are folded in the same
/// order on every pool size.
pub(super) const SOURCE_CHUNK: usize = 32;

/// Single-source shortest-path counts over an unweighted graph.
pub(super) struct ShortestPaths {
    /// Nodes in non-decreasing distance from the source.
    pub order: Vec<usize>,
    pub dist: Vec<usize>,
    pub sigma: Vec<f64>,
}

impl ShortestPaths {
    pub fn from(adj: &[Vec<usize>], source: usize) -> Self {
        let n = adj.len();
        let mut dist = vec![usize::MAX; n];
        let mut sigma = vec![0.0; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        dist[source] = 0;
        sigma[source] = 1.0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }
        Self { order, dist, sigma }
    }

    /// Brandes dependency accumulation: `delta[v] = Σ_t weight(t) σ_st(v) / σ_st`
    /// over targets `t ≠ s, v`.
    pub fn dependencies(&self, adj: &[Vec<usize>], weight: impl Fn(usize) -> f64) -> Vec<f64> {
        let mut delta = vec![0.0; adj.len()];
        for &w in self.order.iter().rev() {
            let carry = (weight(w) + delta[w]) / self.sigma[w];
            for &v in &adj[w] {
                if self.dist[v] != usize::MAX && self.dist[v] + 1 == self.dist[w] {
                    delta[v] += self.sigma[v] * carry;
                }
            }
        }
        if let Some(&s) = self.order.first() {
            delta[s] = 0.0;
        }
        delta
    }
}

/// Unnormalised bipartite betweenness over unified indices.
///
/// Endpoint pairs are restricted to nodes of the same type (two type-I
/// nodes or two type-II nodes); intermediaries may be of either type. Each
/// unordered pair is counted once.
pub fn betweenness_raw(g: &BipartiteGraph) -> Vec<f64> {
    let adj = g.unified_adjacency();
    let n = adj.len();
    let n1 = g.n1();
    let parts = par::map_chunks(n, SOURCE_CHUNK, |sources| {
        let mut acc = vec![0.0; n];
        for s in sources {
            let source_is_type1 = s < n1;
            let sp = ShortestPaths::from(&adj, s);
            let delta = sp.dependencies(&adj, |t| if (t < n1) == source_is_type1 { 1.0 } else { 0.0 });
            for (a, d) in acc.iter_mut().zip(delta) {
                *a += d;
            }
        }
        acc
    });
    par::sum_in_order(parts, n).into_iter().map(|b| b / 2.0).collect()
}

/// Largest attainable betweenness of a node whose own class has `own`
/// nodes while the other class has `other`:
/// `½ [o²(s+1)² + o(s+1)(2t − s − 1) − t(2s − t + 3)]` with
/// `s = (own − 1) div o`, `t = (own − 1) mod o`.
pub fn betweenness_normalizer(own: usize, other: usize) -> f64 {
    if own == 0 || other == 0 {
        return 0.0;
    }
    let o = other as f64;
    let s = ((own - 1) / other) as f64;
    let t = ((own - 1) % other) as f64;
    0.5 * (o * o * (s + 1.0).powi(2) + o * (s + 1.0) * (2.0 * t - s - 1.0) - t * (2.0 * s - t + 3.0))
}

/// Bipartite betweenness, each type divided by its normaliser.
pub fn betweenness_centrality(g: &BipartiteGraph) -> (CentralityScores, CentralityScores) {
    let raw = betweenness_raw(g);
    let scale = |values: &[f64], norm: f64| -> Vec<f64> {
        values.iter().map(|&b| if norm > 0.0 { b / norm } else { 0.0 }).collect()
    };
    let t1 = scale(&raw[..g.n1()], betweenness_normalizer(g.n1(), g.n2()));
    let t2 = scale(&raw[g.n1()..], betweenness_normalizer(g.n2(), g.n1()));
    (CentralityScores::new(NodeType::Type1, t1), CentralityScores::new(NodeType::Type2, t2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_is_zero() {
        let g = BipartiteGraph::from_label_edges(&[("u", "v")]).unwrap();
        assert_eq!(betweenness_raw(&g), vec![0.0, 0.0]);
    }

    #[test]
    fn path_middle_carries_the_type1_pair() {
        let g = BipartiteGraph::from_label_edges(&[("u1", "v"), ("u2", "v")]).unwrap();
        assert_eq!(betweenness_raw(&g), vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn normalizer_matches_star_maximum() {
        // K_{3,1}: the lone type-II node sits on all 3 type-I geodesics.
        assert_eq!(betweenness_normalizer(1, 3), 3.0);
        assert_eq!(betweenness_normalizer(3, 1), 0.0);
        let g = BipartiteGraph::from_label_edges(&[("a", "c"), ("b", "c"), ("d", "c")]).unwrap();
        assert_eq!(betweenness_raw(&g)[3], 3.0);
        let (b1, b2) = betweenness_centrality(&g);
        assert_eq!(b2.scores(), &[1.0]);
        assert_eq!(b1.scores(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn two_paths_split_credit() {
        // u1 - {v1, v2} - u2: each v lies on one of two geodesics.
        let g = BipartiteGraph::from_label_edges(&[("u1", "v1"), ("u1", "v2"), ("u2", "v1"), ("u2", "v2")]).unwrap();
        let raw = betweenness_raw(&g);
        assert_eq!(raw, vec![0.5, 0.5, 0.5, 0.5]);
    }
}
