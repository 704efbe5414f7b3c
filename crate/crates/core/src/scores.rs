use std::io::Write;

use serde::Serialize;

use crate::bigraph::{BipartiteGraph, NodeType};
use crate::error::{Error, Result};

/// Per-node scores for one node class, plus the derived ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityScores {
    node_type: NodeType,
    scores: Vec<f64>,
    ranking: Vec<usize>,
}

impl CentralityScores {
    /// `scores[i]` is the score of node `i` of `node_type`. The ranking sorts
    /// by score descending, ties broken by ascending node index.
    pub fn new(node_type: NodeType, scores: Vec<f64>) -> Self {
        let mut ranking: Vec<usize> = (0..scores.len()).collect();
        ranking.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
        Self { node_type, scores, ranking }
    }

    pub fn node_type(&self) -> NodeType {
        self.node_type
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn score(&self, index: usize) -> f64 {
        self.scores[index]
    }

    /// Node indices from most to least central.
    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    fn labels<'g>(&self, graph: &'g BipartiteGraph) -> Result<&'g [String]> {
        let labels = graph.labels(self.node_type);
        if labels.len() != self.scores.len() {
            return Err(Error::invalid(format!(
                "{} scores for {} {} nodes",
                self.scores.len(),
                labels.len(),
                self.node_type
            )));
        }
        Ok(labels)
    }

    /// JSON object `{"node_type", "scores": {label: score}, "ranking": [label, ..]}`.
    /// Score keys follow node order.
    pub fn to_json(&self, graph: &BipartiteGraph) -> Result<serde_json::Value> {
        #[derive(Serialize)]
        struct Export<'a> {
            node_type: NodeType,
            scores: serde_json::Map<String, serde_json::Value>,
            ranking: Vec<&'a str>,
        }
        let labels = self.labels(graph)?;
        let scores = labels.iter().zip(&self.scores).map(|(l, &s)| (l.clone(), serde_json::Value::from(s))).collect();
        let ranking = self.ranking.iter().map(|&i| labels[i].as_str()).collect();
        Ok(serde_json::to_value(Export { node_type: self.node_type, scores, ranking })?)
    }

    /// CSV with columns `rank,label,score`, one row per node in ranking order.
    pub fn write_csv<W: Write>(&self, graph: &BipartiteGraph, writer: W) -> Result<()> {
        let labels = self.labels(graph)?;
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["rank", "label", "score"])?;
        for (pos, &i) in self.ranking.iter().enumerate() {
            w.write_record([(pos + 1).to_string(), labels[i].clone(), self.scores[i].to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}
