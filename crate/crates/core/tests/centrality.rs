mod common;

use std::collections::BTreeSet;

use ::biface::biface::{face1_bridges, face2_bridges, refine_biclique, BifaceAnalysis};
use ::biface::bigraph::bridges;
use ::biface::fca::{Concept, ConceptLattice, FormalContext};
use ::biface::{biface, biface_type1, biface_type2, Denominator, NodeType};
use common::{airline, bf_oracle, random_graph, rng, to_mask, MaskContext};

fn airline_lattice() -> (FormalContext, ConceptLattice) {
    let ctx = airline().to_formal_context();
    let lat = ConceptLattice::build(&ctx).unwrap();
    (ctx, lat)
}

fn concept(ctx: &FormalContext, lat: &ConceptLattice, objects: &[&str], attributes: &[&str]) -> usize {
    let c = Concept { extent: ctx.object_set(objects).unwrap(), intent: ctx.attribute_set(attributes).unwrap() };
    lat.id_of(&c).unwrap()
}

const Q_EXTENT: [&str; 4] = ["AirCanada", "Mexicana", "ThaiAirways", "UnitedAirlines"];
const Q_INTENT: [&str; 3] = ["LatinAmerica", "Caribbean", "USA"];

#[test]
fn airline_biclique_faces() {
    let (ctx, lat) = airline_lattice();
    let q = concept(&ctx, &lat, &Q_EXTENT, &Q_INTENT);
    let ext: BTreeSet<Vec<&str>> = lat.extensional_faces_of(q).iter().map(|f| ctx.object_labels(f)).collect();
    assert_eq!(ext, BTreeSet::from([vec!["ThaiAirways"], vec!["Mexicana"]]));
    let int: Vec<Vec<&str>> = lat.intensional_faces_of(q).iter().map(|f| ctx.attribute_labels(f)).collect();
    assert_eq!(int, vec![vec!["Caribbean"]]);
}

#[test]
fn airline_refinement_drops_caribbean() {
    let (ctx, lat) = airline_lattice();
    let q = concept(&ctx, &lat, &Q_EXTENT, &Q_INTENT);
    let r = refine_biclique(&lat, q).unwrap();
    assert_eq!(r.extent, lat.concept(q).extent);
    assert_eq!(ctx.attribute_labels(&r.intent), vec!["LatinAmerica", "USA"]);
}

#[test]
fn airline_europe_has_a_terminal_airline() {
    let (ctx, lat) = airline_lattice();
    let europe = ctx.attribute_id("Europe").unwrap();
    let id = lat
        .concepts()
        .iter()
        .position(|c| c.intent.count_ones(..) == 1 && c.intent.contains(europe))
        .expect("Europe forms a single-attribute concept");
    assert_eq!(lat.concept(id).extent.count_ones(..), 11);
    let bm = ctx.object_id("BritishMidland").unwrap();
    assert!(lat.minigen_extent_of(id).contains_singleton(bm));
    assert!(face1_bridges(&lat).iter().any(|b| b.terminal == bm && b.partner == europe));
}

#[test]
fn airline_graph_bridges() {
    let g = airline();
    let ansett = g.find(NodeType::Type1, "AnsettAustralia").unwrap().index;
    let asia = g.find(NodeType::Type2, "AsiaPacific").unwrap().index;
    assert!(bridges(&g).contains(&(ansett, asia)));
}

#[test]
fn airline_terminal_node_loses_bridge_credit() {
    let g = airline();
    let a = BifaceAnalysis::new(&g).unwrap();
    let bm = g.find(NodeType::Type1, "BritishMidland").unwrap().index;
    let gamma = a.face_bridges(NodeType::Type1).len();
    let hits = a.face_bridges(NodeType::Type1).iter().filter(|b| b.terminal == bm).count();
    assert!(hits >= 1);
    let bridge_term = 1.0 - hits as f64 / gamma as f64;
    assert!(bridge_term < 1.0);
    let (oracle1, _) = bf_oracle(&g, false);
    assert!((a.scores(NodeType::Type1, Denominator::Algorithm).score(bm) - oracle1[bm]).abs() < 1e-12);
}

#[test]
fn airline_scores_match_the_straight_line_oracle() {
    let g = airline();
    for (mode, equation) in [(Denominator::Algorithm, false), (Denominator::Equation, true)] {
        let (o1, o2) = bf_oracle(&g, equation);
        let (s1, s2) = biface(&g, mode).unwrap();
        for (a, b) in s1.scores().iter().zip(&o1).chain(s2.scores().iter().zip(&o2)) {
            assert!((a - b).abs() < 1e-12, "{mode:?}: {a} vs {b}");
        }
    }
}

#[test]
fn random_scores_match_the_straight_line_oracle() {
    let mut r = rng(21);
    for _ in 0..60 {
        let g = random_graph(&mut r, 10, 10);
        let (o1, o2) = bf_oracle(&g, false);
        let s1 = biface_type1(&g, Denominator::Algorithm).unwrap();
        let s2 = biface_type2(&g, Denominator::Algorithm).unwrap();
        for (a, b) in s1.scores().iter().zip(&o1).chain(s2.scores().iter().zip(&o2)) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn biclique_concepts_are_the_maximal_bicliques() {
    let mut r = rng(22);
    for _ in 0..40 {
        let g = random_graph(&mut r, 12, 12);
        let lat = ConceptLattice::build(&g.to_formal_context()).unwrap();
        let got: BTreeSet<(u64, u64)> =
            lat.bicliques().map(|id| (to_mask(&lat.concept(id).extent), to_mask(&lat.concept(id).intent))).collect();
        assert_eq!(got, MaskContext::of(&g).maximal_bicliques());
    }
}

#[test]
fn refined_sides_stay_inside_their_concept() {
    let mut r = rng(23);
    for _ in 0..40 {
        let g = random_graph(&mut r, 9, 9);
        let a = BifaceAnalysis::new(&g).unwrap();
        for b in a.face_bicliques() {
            let c = a.lattice().concept(b.origin);
            assert!(b.extent.is_subset(&c.extent) && b.intent.is_subset(&c.intent));
        }
        // Every bridge partner is the single node on the far side.
        for fb in face1_bridges(a.lattice()) {
            assert_eq!(a.lattice().concept(fb.concept).intent.ones().collect::<Vec<_>>(), vec![fb.partner]);
        }
        for fb in face2_bridges(a.lattice()) {
            assert_eq!(a.lattice().concept(fb.concept).extent.ones().collect::<Vec<_>>(), vec![fb.partner]);
        }
    }
}
