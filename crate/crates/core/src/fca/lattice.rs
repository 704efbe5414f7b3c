use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use super::context::FormalContext;
use super::generators::{minimal_blockers, minimal_blockers_up_to, GeneratorSet};
use crate::error::{Error, Result};
use crate::par;

/// A closed `(extent, intent)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: FixedBitSet,
    pub intent: FixedBitSet,
}

impl Concept {
    /// True when both sides are nonempty, i.e. the concept is a maximal biclique.
    pub fn is_biclique(&self) -> bool {
        !self.extent.is_clear() && !self.intent.is_clear()
    }
}

/// Index of a concept inside one [`ConceptLattice`].
pub type ConceptId = usize;

/// Set difference between a concept and one of its covers.
pub type Face = FixedBitSet;

/// Every formal concept of a context together with its Hasse diagram.
#[derive(Debug, Clone)]
pub struct ConceptLattice {
    concepts: Vec<Concept>,
    upper: Vec<Vec<ConceptId>>,
    lower: Vec<Vec<ConceptId>>,
    by_extent: HashMap<FixedBitSet, ConceptId>,
    n_objects: usize,
    n_attributes: usize,
}

/// All intersections of `generators`, plus `full` (the empty intersection).
fn intersection_closure(generators: &[FixedBitSet], full: FixedBitSet) -> Vec<FixedBitSet> {
    let mut family: HashSet<FixedBitSet> = HashSet::new();
    family.insert(full);
    for gen in generators {
        if family.contains(gen) {
            continue;
        }
        let current: Vec<&FixedBitSet> = family.iter().collect();
        let fresh = par::map_slice(&current, |set| {
            let mut s = (*set).clone();
            s.intersect_with(gen);
            s
        });
        family.extend(fresh);
    }
    family.into_iter().collect()
}

/// Keeps the sets that have no strict superset among `candidates`.
fn maximal_sets(mut candidates: Vec<FixedBitSet>) -> Vec<FixedBitSet> {
    candidates.sort_by_key(|s| std::cmp::Reverse(s.count_ones(..)));
    candidates.dedup();
    let mut kept: Vec<FixedBitSet> = Vec::with_capacity(candidates.len());
    for c in candidates {
        if !kept.iter().any(|k| c.is_subset(k)) {
            kept.push(c);
        }
    }
    kept
}

impl ConceptLattice {
    /// Builds the full concept lattice of `ctx`.
    ///
    /// Closed sets are generated as the intersection closure of whichever
    /// side of the context has fewer elements. Covers come from the
    /// neighbour construction: the lower covers of `(A, B)` are the maximal
    /// sets among `{A ∩ m' : m ∉ B}` (dually, upper covers are the maximal
    /// intents among `{B ∩ g' : g ∉ A}`); the other direction is obtained by
    /// inverting the relation.
    pub fn build(ctx: &FormalContext) -> Result<Self> {
        let (n, k) = (ctx.n_objects(), ctx.n_attributes());
        if n == 0 || k == 0 {
            return Err(Error::invalid("cannot build a lattice over an empty context"));
        }
        let via_attributes = k <= n;

        let mut concepts: Vec<Concept> = if via_attributes {
            let columns: Vec<FixedBitSet> = (0..k).map(|m| ctx.column(m).clone()).collect();
            let extents = intersection_closure(&columns, ctx.all_objects());
            par::map_slice(&extents, |a| Concept { intent: ctx.derive_extent(a), extent: a.clone() })
        } else {
            let rows: Vec<FixedBitSet> = (0..n).map(|g| ctx.row(g).clone()).collect();
            let intents = intersection_closure(&rows, ctx.all_attributes());
            par::map_slice(&intents, |b| Concept { extent: ctx.derive_intent(b), intent: b.clone() })
        };
        // Largest extent first; the top concept is always index 0.
        concepts.sort_by(|x, y| {
            y.extent.count_ones(..).cmp(&x.extent.count_ones(..)).then_with(|| x.extent.cmp(&y.extent))
        });

        let by_extent: HashMap<FixedBitSet, ConceptId> =
            concepts.iter().enumerate().map(|(i, c)| (c.extent.clone(), i)).collect();
        let by_intent: HashMap<&FixedBitSet, ConceptId> =
            concepts.iter().enumerate().map(|(i, c)| (&c.intent, i)).collect();

        let count = concepts.len();
        let mut upper = vec![Vec::new(); count];
        let mut lower = vec![Vec::new(); count];
        if via_attributes {
            let found = par::map_slice(&concepts, |c| {
                let candidates = (0..k)
                    .filter(|&m| !c.intent.contains(m))
                    .map(|m| {
                        let mut a = c.extent.clone();
                        a.intersect_with(ctx.column(m));
                        a
                    })
                    .collect();
                maximal_sets(candidates).iter().map(|a| by_extent[a]).collect::<Vec<_>>()
            });
            for (i, covers) in found.into_iter().enumerate() {
                for &l in &covers {
                    upper[l].push(i);
                }
                lower[i] = covers;
            }
        } else {
            let found = par::map_slice(&concepts, |c| {
                let candidates = (0..n)
                    .filter(|&g| !c.extent.contains(g))
                    .map(|g| {
                        let mut b = c.intent.clone();
                        b.intersect_with(ctx.row(g));
                        b
                    })
                    .collect();
                maximal_sets(candidates).iter().map(|b| by_intent[b]).collect::<Vec<_>>()
            });
            for (i, covers) in found.into_iter().enumerate() {
                for &u in &covers {
                    lower[u].push(i);
                }
                upper[i] = covers;
            }
        }
        for list in upper.iter_mut().chain(lower.iter_mut()) {
            list.sort_unstable();
        }

        Ok(Self { concepts, upper, lower, by_extent, n_objects: n, n_attributes: k })
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn concept(&self, id: ConceptId) -> &Concept {
        &self.concepts[id]
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_attributes(&self) -> usize {
        self.n_attributes
    }

    /// The concept with the largest extent.
    pub fn top(&self) -> ConceptId {
        0
    }

    /// The concept with the smallest extent.
    pub fn bottom(&self) -> ConceptId {
        self.concepts.len() - 1
    }

    pub fn upper_covers(&self, id: ConceptId) -> &[ConceptId] {
        &self.upper[id]
    }

    pub fn lower_covers(&self, id: ConceptId) -> &[ConceptId] {
        &self.lower[id]
    }

    /// Concepts whose extent and intent are both nonempty.
    pub fn bicliques(&self) -> impl Iterator<Item = ConceptId> + '_ {
        (0..self.len()).filter(|&i| self.concepts[i].is_biclique())
    }

    pub fn find_by_extent(&self, extent: &FixedBitSet) -> Option<ConceptId> {
        self.by_extent.get(extent).copied()
    }

    /// Looks a concept up, failing if it is not part of this lattice.
    pub fn id_of(&self, concept: &Concept) -> Result<ConceptId> {
        self.find_by_extent(&concept.extent)
            .filter(|&i| self.concepts[i].intent == concept.intent)
            .ok_or_else(|| Error::invalid("concept is not part of this lattice"))
    }

    /// `B \ B_d` for every upper cover `(A_d, B_d)`.
    pub fn intensional_faces_of(&self, id: ConceptId) -> Vec<Face> {
        let c = &self.concepts[id];
        self.upper[id]
            .iter()
            .map(|&d| {
                let mut f = c.intent.clone();
                f.difference_with(&self.concepts[d].intent);
                f
            })
            .collect()
    }

    /// `A \ A_l` for every lower cover `(A_l, B_l)`.
    pub fn extensional_faces_of(&self, id: ConceptId) -> Vec<Face> {
        let c = &self.concepts[id];
        self.lower[id]
            .iter()
            .map(|&l| {
                let mut f = c.extent.clone();
                f.difference_with(&self.concepts[l].extent);
                f
            })
            .collect()
    }

    pub fn intensional_faces(&self, concept: &Concept) -> Result<Vec<Face>> {
        Ok(self.intensional_faces_of(self.id_of(concept)?))
    }

    pub fn extensional_faces(&self, concept: &Concept) -> Result<Vec<Face>> {
        Ok(self.extensional_faces_of(self.id_of(concept)?))
    }

    /// Minimal generators of the intent: the minimal blockers of the
    /// intensional faces.
    pub fn minigen_intent_of(&self, id: ConceptId) -> GeneratorSet {
        minimal_blockers(&self.intensional_faces_of(id), self.n_attributes)
    }

    /// Minimal generators of the extent: the minimal blockers of the
    /// extensional faces.
    pub fn minigen_extent_of(&self, id: ConceptId) -> GeneratorSet {
        minimal_blockers(&self.extensional_faces_of(id), self.n_objects)
    }

    /// Attributes that generate the intent on their own.
    pub fn singleton_generators_intent_of(&self, id: ConceptId) -> Vec<usize> {
        minimal_blockers_up_to(&self.intensional_faces_of(id), self.n_attributes, 1).singletons().collect()
    }

    /// Objects that generate the extent on their own.
    pub fn singleton_generators_extent_of(&self, id: ConceptId) -> Vec<usize> {
        minimal_blockers_up_to(&self.extensional_faces_of(id), self.n_objects, 1).singletons().collect()
    }

    pub fn minigen_intent(&self, concept: &Concept) -> Result<GeneratorSet> {
        Ok(self.minigen_intent_of(self.id_of(concept)?))
    }

    pub fn minigen_extent(&self, concept: &Concept) -> Result<GeneratorSet> {
        Ok(self.minigen_extent_of(self.id_of(concept)?))
    }
}
