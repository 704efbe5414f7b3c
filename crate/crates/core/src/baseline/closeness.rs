use std::collections::VecDeque;

use crate::bigraph::{BipartiteGraph, NodeType};
use crate::par;
use crate::scores::CentralityScores;

/// Sum of BFS distances from `source` to every node it reaches.
pub(super) fn distance_sum(adj: &[Vec<usize>], source: usize) -> usize {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    let mut total = 0;
    while let Some(v) = queue.pop_front() {
        total += dist[v];
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    total
}

/// Normalised bipartite closeness.
///
/// A type-I node scores `(|M| + 2(|G| − 1)) / Σ d`, where the sum runs over
/// every other node it can reach (of either type); type-II nodes use
/// `|G| + 2(|M| − 1)`. Distances are only summed inside the node's own
/// component, and a node that reaches nothing scores 0.
pub fn closeness_centrality(g: &BipartiteGraph) -> (CentralityScores, CentralityScores) {
    let adj = g.unified_adjacency();
    let sums = par::map_range(adj.len(), |s| distance_sum(&adj, s));
    let (n1, n2) = (g.n1() as f64, g.n2() as f64);
    let score = |sum: usize, numerator: f64| if sum == 0 { 0.0 } else { numerator / sum as f64 };
    let t1 = sums[..g.n1()].iter().map(|&s| score(s, n2 + 2.0 * (n1 - 1.0))).collect();
    let t2 = sums[g.n1()..].iter().map(|&s| score(s, n1 + 2.0 * (n2 - 1.0))).collect();
    (CentralityScores::new(NodeType::Type1, t1), CentralityScores::new(NodeType::Type2, t2))
}
