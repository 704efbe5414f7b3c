//! Formal concept analysis: derivation operators, the concept lattice with
//! its cover relation, faces, and minimal generators.

mod context;
mod generators;
mod lattice;

pub use context::FormalContext;
pub use generators::{minimal_blockers, minimal_blockers_up_to, GeneratorSet};
pub use lattice::{Concept, ConceptId, ConceptLattice, Face};
