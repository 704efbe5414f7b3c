//! Centrality analysis of two-mode networks through their concept lattice.
//!
//! The graph's biadjacency matrix is read as a formal context; Bi-face
//! centrality is computed from the concepts, their faces and minimal
//! generators. Six classical centralities, an infection-spreading
//! simulator and Kendall rank correlation are included for comparison.
//!
//! ```
//! use ::biface::{biface, BipartiteGraph, Denominator};
//!
//! let g = BipartiteGraph::from_label_edges(&[("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")])?;
//! let (type1, type2) = biface(&g, Denominator::Algorithm)?;
//! assert_eq!(type1.scores(), &[2.0, 2.0]);
//! assert_eq!(type2.scores(), &[2.0, 2.0]);
//! # Ok::<(), ::biface::Error>(())
//! ```

pub mod baseline;
pub mod biface;
pub mod bigraph;
pub mod error;
pub mod eval;
pub mod fca;
pub mod measure;
mod par;
pub mod scores;

pub use biface::{biface, biface_type1, biface_type2, BifaceAnalysis, Denominator};
pub use bigraph::{BipartiteGraph, EdgeListFormat, NodeId, NodeType};
pub use error::{Error, Result};
pub use fca::{ConceptLattice, FormalContext};
pub use measure::{Measure, MeasureOptions};
pub use scores::CentralityScores;
