use crate::bigraph::{BipartiteGraph, NodeId, NodeType};
use crate::scores::CentralityScores;

/// Number of incident edges of every node.
pub fn degree_centrality(g: &BipartiteGraph) -> (CentralityScores, CentralityScores) {
    let per_type = |ty: NodeType| {
        let scores = (0..g.count(ty)).map(|i| g.degree(NodeId { ty, index: i }) as f64).collect();
        CentralityScores::new(ty, scores)
    };
    (per_type(NodeType::Type1), per_type(NodeType::Type2))
}
