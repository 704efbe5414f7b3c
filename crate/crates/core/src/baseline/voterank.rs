use crate::bigraph::{BipartiteGraph, NodeId, NodeType};
use crate::error::{Error, Result};
use crate::scores::CentralityScores;

/// One round of the election.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Election {
    pub node: NodeId,
    /// Votes the winner received in its round.
    pub votes: f64,
}

/// VoteRank over both node types.
///
/// Every node starts with voting ability 1 and votes for each neighbour.
/// Each round elects the non-elected node with the most votes (ties to the
/// lowest unified index); the winner stops voting, and each neighbour loses
/// `1/⟨k⟩` ability (floored at 0), `⟨k⟩` being the mean degree.
///
/// Abilities are kept as integers scaled by `2|I|`, so the decrement is
/// exactly `n1 + n2` units and vote totals are compared without rounding.
pub fn vote_rank(g: &BipartiteGraph, k: usize) -> Result<Vec<Election>> {
    let n = g.n_nodes();
    if k > n {
        return Err(Error::invalid(format!("cannot elect {k} spreaders from {n} nodes")));
    }
    let adj = g.unified_adjacency();
    let unit = 2 * g.n_edges() as u64;
    let decrement = if unit == 0 { 0 } else { n as u64 };
    let mut ability = vec![unit; n];
    let mut votes: Vec<u64> = adj.iter().map(|nb| nb.len() as u64 * unit).collect();
    let mut elected = vec![false; n];
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let winner = (0..n)
            .filter(|&w| !elected[w])
            .max_by(|&a, &b| votes[a].cmp(&votes[b]).then(b.cmp(&a)))
            .expect("k <= n leaves a candidate");
        out.push(Election {
            node: g.node_of(winner),
            votes: if unit == 0 { 0.0 } else { votes[winner] as f64 / unit as f64 },
        });
        elected[winner] = true;
        let mut changes = vec![(winner, ability[winner])];
        ability[winner] = 0;
        for &x in &adj[winner] {
            let drop = ability[x].min(decrement);
            ability[x] -= drop;
            changes.push((x, drop));
        }
        for (x, drop) in changes {
            for &w in &adj[x] {
                votes[w] -= drop;
            }
        }
    }
    Ok(out)
}

/// Election order turned into scores: the `r`-th elected node (from 0)
/// scores `n1 + n2 − r`, so earlier means more central.
pub fn vote_rank_scores(g: &BipartiteGraph) -> (CentralityScores, CentralityScores) {
    let n = g.n_nodes();
    let order = vote_rank(g, n).expect("electing every node is always possible");
    let mut s1 = vec![0.0; g.n1()];
    let mut s2 = vec![0.0; g.n2()];
    for (round, e) in order.iter().enumerate() {
        let score = (n - round) as f64;
        match e.node.ty {
            NodeType::Type1 => s1[e.node.index] = score,
            NodeType::Type2 => s2[e.node.index] = score,
        }
    }
    (CentralityScores::new(NodeType::Type1, s1), CentralityScores::new(NodeType::Type2, s2))
}
