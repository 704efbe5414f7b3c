use fixedbitset::FixedBitSet;

/// The minimal generators of one concept side, in canonical order
/// (by size, then by bit pattern), so equality ignores discovery order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    generators: Vec<FixedBitSet>,
}

impl GeneratorSet {
    pub fn new(mut generators: Vec<FixedBitSet>) -> Self {
        generators.sort_by(|a, b| a.count_ones(..).cmp(&b.count_ones(..)).then_with(|| a.cmp(b)));
        generators.dedup();
        Self { generators }
    }

    pub fn generators(&self) -> &[FixedBitSet] {
        &self.generators
    }

    /// Elements that form a generator on their own.
    pub fn singletons(&self) -> impl Iterator<Item = usize> + '_ {
        self.generators.iter().filter(|h| h.count_ones(..) == 1).filter_map(|h| h.minimum())
    }

    pub fn contains_singleton(&self, element: usize) -> bool {
        self.singletons().any(|e| e == element)
    }
}

/// Drops duplicates and every candidate that has a strict subset in the pool.
pub(crate) fn minimal(mut pool: Vec<FixedBitSet>) -> Vec<FixedBitSet> {
    pool.sort_by(|a, b| a.count_ones(..).cmp(&b.count_ones(..)).then_with(|| a.cmp(b)));
    pool.dedup();
    let mut kept: Vec<FixedBitSet> = Vec::with_capacity(pool.len());
    for h in pool {
        if !kept.iter().any(|k| k.is_subset(&h)) {
            kept.push(h);
        }
    }
    kept
}

/// Incremental minimal-blocker computation over a face family.
///
/// Faces are folded in one at a time: generators that already hit the new
/// face are kept, the others are extended by each element of the face, and
/// non-minimal candidates are pruned. An empty family yields `{∅}`.
pub fn minimal_blockers(faces: &[FixedBitSet], universe: usize) -> GeneratorSet {
    minimal_blockers_up_to(faces, universe, usize::MAX)
}

/// The minimal blockers with at most `max_size` elements.
///
/// Same fold as [`minimal_blockers`], dropping oversized candidates as soon
/// as they appear. Every small minimal blocker only descends from small
/// ones, so nothing is lost, while the family stays polynomial in size.
pub fn minimal_blockers_up_to(faces: &[FixedBitSet], universe: usize, max_size: usize) -> GeneratorSet {
    let mut faces = faces.iter();
    let Some(first) = faces.next() else {
        return GeneratorSet::new(vec![FixedBitSet::with_capacity(universe)]);
    };
    if max_size == 0 {
        return GeneratorSet::new(Vec::new());
    }
    let singleton = |a: usize| {
        let mut h = FixedBitSet::with_capacity(universe);
        h.insert(a);
        h
    };
    let mut current: Vec<FixedBitSet> = first.ones().map(singleton).collect();
    for face in faces {
        let mut pool = Vec::with_capacity(current.len());
        for h in current {
            if !h.is_disjoint(face) {
                pool.push(h);
            } else if h.count_ones(..) < max_size {
                pool.extend(face.ones().map(|a| {
                    let mut grown = h.clone();
                    grown.insert(a);
                    grown
                }));
            }
        }
        current = minimal(pool);
    }
    GeneratorSet::new(current)
}
