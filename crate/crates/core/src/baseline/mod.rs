//! Comparison centralities for two-mode networks.

mod closeness;
mod degree;
mod eigenvector;
mod paths;
mod percolation;
mod voterank;

pub use closeness::closeness_centrality;
pub use degree::degree_centrality;
pub use eigenvector::{eigenvector_centrality, Eigenvector, PowerIterationConfig};
pub use paths::{betweenness_centrality, betweenness_normalizer, betweenness_raw};
pub use percolation::{percolation_centrality, PercolationConfig};
pub use voterank::{vote_rank, vote_rank_scores, Election};
