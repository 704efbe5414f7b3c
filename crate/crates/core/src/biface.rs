//! Bi-face centrality.
//!
//! A node's Bi-face score adds two terms, each in `[0, 1]`:
//!
//! * the **face-biclique term**: the share of refined bicliques that still
//!   contain the node once non-influential nodes have been stripped from
//!   every concept;
//! * the **face-bridge term**: one minus the node's share of the face
//!   bridges, i.e. of the terminal-node edges found through singleton
//!   minimal generators of single-attribute (single-object) concepts.
//!
//! Everything is read off one concept lattice of the graph's adjacency
//! context. The lattice is only traversed once per term; refinement of one
//! concept uses the original covers and never feeds back into another.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::bigraph::{BipartiteGraph, NodeType};
use crate::error::{Error, Result};
use crate::fca::{ConceptId, ConceptLattice, Face};
use crate::par;
use crate::scores::CentralityScores;

/// Which count normalises the face-biclique term.
///
/// The two choices differ only by a positive constant per node type, so
/// rankings are the same under either.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Denominator {
    /// Number of input bicliques (concepts with nonempty extent and intent).
    #[default]
    Algorithm,
    /// Number of refined bicliques that keep at least one node of the
    /// scored type.
    Equation,
}

impl std::str::FromStr for Denominator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "algorithm" => Ok(Denominator::Algorithm),
            "equation" => Ok(Denominator::Equation),
            other => {
                Err(Error::invalid(format!("unknown denominator mode {other:?} (expected algorithm or equation)")))
            }
        }
    }
}

/// A biclique concept with its non-influential nodes removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceBiclique {
    pub origin: ConceptId,
    /// Refined type-I side `Â ⊆ A`.
    pub extent: FixedBitSet,
    /// Refined type-II side `B̂ ⊆ B`.
    pub intent: FixedBitSet,
}

/// One face-bridge entry: `terminal` is the node credited with the bridge
/// and `partner` is the single node on the other side of the concept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceBridge {
    pub terminal: usize,
    pub partner: usize,
    pub concept: ConceptId,
}

/// Intersection of a face family; empty when there are no faces.
fn face_intersection(faces: &[Face], universe: usize) -> FixedBitSet {
    let mut it = faces.iter();
    match it.next() {
        None => FixedBitSet::with_capacity(universe),
        Some(first) => {
            let mut acc = first.clone();
            for f in it {
                acc.intersect_with(f);
            }
            acc
        }
    }
}

fn refine_unchecked(lat: &ConceptLattice, id: ConceptId) -> FaceBiclique {
    let c = lat.concept(id);
    let mut extent = c.extent.clone();
    if extent.count_ones(..) > 1 {
        extent.difference_with(&face_intersection(&lat.extensional_faces_of(id), lat.n_objects()));
    }
    let mut intent = c.intent.clone();
    if intent.count_ones(..) > 1 {
        intent.difference_with(&face_intersection(&lat.intensional_faces_of(id), lat.n_attributes()));
    }
    FaceBiclique { origin: id, extent, intent }
}

/// Strips the nodes shared by all extensional faces from the extent and
/// the nodes shared by all intensional faces from the intent. Sides with a
/// single node are left alone.
pub fn refine_biclique(lat: &ConceptLattice, id: ConceptId) -> Result<FaceBiclique> {
    if id >= lat.len() {
        return Err(Error::invalid(format!("concept {id} is not part of the lattice")));
    }
    if !lat.concept(id).is_biclique() {
        return Err(Error::invalid(format!("concept {id} has an empty extent or intent and is not a biclique")));
    }
    Ok(refine_unchecked(lat, id))
}

/// Refines every biclique concept, in concept order.
pub fn face_bicliques(lat: &ConceptLattice) -> Vec<FaceBiclique> {
    let ids: Vec<ConceptId> = lat.bicliques().collect();
    par::map_slice(&ids, |&id| refine_unchecked(lat, id))
}

fn bridges_of(lat: &ConceptLattice, ty: NodeType) -> Vec<FaceBridge> {
    let ids: Vec<ConceptId> = lat
        .bicliques()
        .filter(|&id| {
            let c = lat.concept(id);
            match ty {
                NodeType::Type1 => c.intent.count_ones(..) == 1,
                NodeType::Type2 => c.extent.count_ones(..) == 1,
            }
        })
        .collect();
    let found = par::map_slice(&ids, |&id| {
        let c = lat.concept(id);
        // Only single-node generators make terminals, so larger ones are
        // never enumerated.
        let (terminals, partner) = match ty {
            NodeType::Type1 => (lat.singleton_generators_extent_of(id), c.intent.minimum()),
            NodeType::Type2 => (lat.singleton_generators_intent_of(id), c.extent.minimum()),
        };
        let partner = partner.expect("filtered to singleton sides");
        debug_assert!(
            terminals.windows(2).all(|w| w[0] != w[1]),
            "a node appears twice among the singleton generators of one concept"
        );
        terminals.into_iter().map(|terminal| FaceBridge { terminal, partner, concept: id }).collect::<Vec<_>>()
    });
    found.into_iter().flatten().collect()
}

/// Face-I bridges: for every concept with a single attribute `m`, each
/// singleton extensional minimal generator `{u}` contributes `(u, m)`.
pub fn face1_bridges(lat: &ConceptLattice) -> Vec<FaceBridge> {
    bridges_of(lat, NodeType::Type1)
}

/// Face-II bridges: for every concept with a single object `g`, each
/// singleton intensional minimal generator `{v}` contributes `(v, g)`.
pub fn face2_bridges(lat: &ConceptLattice) -> Vec<FaceBridge> {
    bridges_of(lat, NodeType::Type2)
}

/// Everything the scores are computed from, built once per graph.
#[derive(Debug, Clone)]
pub struct BifaceAnalysis {
    lattice: ConceptLattice,
    bicliques: Vec<FaceBiclique>,
    face1: Vec<FaceBridge>,
    face2: Vec<FaceBridge>,
}

impl BifaceAnalysis {
    pub fn new(g: &BipartiteGraph) -> Result<Self> {
        if g.n1() == 0 || g.n2() == 0 {
            return Err(Error::invalid("Bi-face needs at least one node of each type"));
        }
        let lattice = ConceptLattice::build(&g.to_formal_context())?;
        Ok(Self::from_lattice(lattice))
    }

    pub fn from_lattice(lattice: ConceptLattice) -> Self {
        let bicliques = face_bicliques(&lattice);
        let face1 = face1_bridges(&lattice);
        let face2 = face2_bridges(&lattice);
        Self { lattice, bicliques, face1, face2 }
    }

    pub fn lattice(&self) -> &ConceptLattice {
        &self.lattice
    }

    pub fn face_bicliques(&self) -> &[FaceBiclique] {
        &self.bicliques
    }

    pub fn face_bridges(&self, ty: NodeType) -> &[FaceBridge] {
        match ty {
            NodeType::Type1 => &self.face1,
            NodeType::Type2 => &self.face2,
        }
    }

    /// Bi-face scores of every node of `ty`.
    pub fn scores(&self, ty: NodeType, mode: Denominator) -> CentralityScores {
        let n = match ty {
            NodeType::Type1 => self.lattice.n_objects(),
            NodeType::Type2 => self.lattice.n_attributes(),
        };
        fn side_of(b: &FaceBiclique, ty: NodeType) -> &FixedBitSet {
            match ty {
                NodeType::Type1 => &b.extent,
                NodeType::Type2 => &b.intent,
            }
        }
        let side = |b| side_of(b, ty);
        let mut membership = vec![0usize; n];
        for b in &self.bicliques {
            for i in side(b).ones() {
                membership[i] += 1;
            }
        }
        let denominator = match mode {
            Denominator::Algorithm => self.bicliques.len(),
            Denominator::Equation => self.bicliques.iter().filter(|b| !side(b).is_clear()).count(),
        };
        let bridges = self.face_bridges(ty);
        let mut terminal = vec![0usize; n];
        for b in bridges {
            terminal[b.terminal] += 1;
        }
        let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
        let scores =
            (0..n).map(|i| ratio(membership[i], denominator) + (1.0 - ratio(terminal[i], bridges.len()))).collect();
        CentralityScores::new(ty, scores)
    }
}

/// Bi-face scores of the type-I nodes.
pub fn biface_type1(g: &BipartiteGraph, mode: Denominator) -> Result<CentralityScores> {
    Ok(BifaceAnalysis::new(g)?.scores(NodeType::Type1, mode))
}

/// Bi-face scores of the type-II nodes.
pub fn biface_type2(g: &BipartiteGraph, mode: Denominator) -> Result<CentralityScores> {
    Ok(BifaceAnalysis::new(g)?.scores(NodeType::Type2, mode))
}

/// Both node types from a single lattice.
pub fn biface(g: &BipartiteGraph, mode: Denominator) -> Result<(CentralityScores, CentralityScores)> {
    let a = BifaceAnalysis::new(g)?;
    Ok((a.scores(NodeType::Type1, mode), a.scores(NodeType::Type2, mode)))
}
