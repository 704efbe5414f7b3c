use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baseline::{
    betweenness_centrality, closeness_centrality, degree_centrality, eigenvector_centrality, percolation_centrality,
    vote_rank_scores, PercolationConfig, PowerIterationConfig,
};
use crate::biface::{biface, biface_type1, biface_type2, Denominator};
use crate::bigraph::{BipartiteGraph, NodeType};
use crate::error::{Error, Result};
use crate::scores::CentralityScores;

/// A centrality measure selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Degree,
    Closeness,
    Betweenness,
    Eigenvector,
    #[serde(rename = "voterank")]
    VoteRank,
    Percolation,
    Biface,
}

impl Measure {
    pub const ALL: [Measure; 7] = [
        Measure::Degree,
        Measure::Closeness,
        Measure::Betweenness,
        Measure::Eigenvector,
        Measure::VoteRank,
        Measure::Percolation,
        Measure::Biface,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Closeness => "closeness",
            Measure::Betweenness => "betweenness",
            Measure::Eigenvector => "eigenvector",
            Measure::VoteRank => "voterank",
            Measure::Percolation => "percolation",
            Measure::Biface => "biface",
        }
    }

    /// Scores for both node types.
    pub fn compute(self, g: &BipartiteGraph, opts: &MeasureOptions) -> Result<(CentralityScores, CentralityScores)> {
        Ok(match self {
            Measure::Degree => degree_centrality(g),
            Measure::Closeness => closeness_centrality(g),
            Measure::Betweenness => betweenness_centrality(g),
            Measure::Eigenvector => {
                let e = eigenvector_centrality(g, &opts.power)?;
                (e.type1, e.type2)
            }
            Measure::VoteRank => vote_rank_scores(g),
            Measure::Percolation => {
                let cfg = PercolationConfig::uniform(g, opts.percolation_state)?;
                percolation_centrality(g, &cfg)?
            }
            Measure::Biface => biface(g, opts.denominator)?,
        })
    }

    /// Whether the measure has a dedicated per-type computation. The others
    /// produce both types in one pass.
    pub fn is_per_type(self) -> bool {
        self == Measure::Biface
    }

    /// Scores for one node type. Only Bi-face avoids computing the other type.
    pub fn compute_type(self, g: &BipartiteGraph, ty: NodeType, opts: &MeasureOptions) -> Result<CentralityScores> {
        match (self, ty) {
            (Measure::Biface, NodeType::Type1) => biface_type1(g, opts.denominator),
            (Measure::Biface, NodeType::Type2) => biface_type2(g, opts.denominator),
            _ => {
                let (s1, s2) = self.compute(g, opts)?;
                Ok(if ty == NodeType::Type1 { s1 } else { s2 })
            }
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| {
            let names: Vec<_> = Measure::ALL.iter().map(|m| m.name()).collect();
            Error::invalid(format!("unknown measure {s:?} (expected one of {})", names.join(", ")))
        })
    }
}

/// Parameters shared by the measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureOptions {
    pub denominator: Denominator,
    pub power: PowerIterationConfig,
    /// Percolation state given to every node.
    pub percolation_state: f64,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        Self { denominator: Denominator::default(), power: PowerIterationConfig::default(), percolation_state: 0.5 }
    }
}
