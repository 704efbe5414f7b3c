//! Independent oracles for the integration tests.
//!
//! Everything here works on plain `u64` bit masks and adjacency matrices
//! and shares no code with the library beyond graph construction.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::fs::File;
use std::path::PathBuf;

use biface::bigraph::load_edge_list;
use biface::{BipartiteGraph, EdgeListFormat};
use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn load(name: &str) -> BipartiteGraph {
    load_edge_list(File::open(data_path(name)).unwrap(), EdgeListFormat::Tsv).unwrap()
}

pub fn airline() -> BipartiteGraph {
    load("airline.tsv")
}

pub fn davis() -> BipartiteGraph {
    load("davis.tsv")
}

/// Random graph with `1..=max1` type-I and `1..=max2` type-II nodes, edge
/// density drawn per graph so sparse and dense cases both occur.
pub fn random_graph(rng: &mut ChaCha8Rng, max1: usize, max2: usize) -> BipartiteGraph {
    let n1 = rng.random_range(1..=max1);
    let n2 = rng.random_range(1..=max2);
    let p: f64 = rng.random_range(0.1..0.9);
    let mut edges = Vec::new();
    for u in 0..n1 {
        for v in 0..n2 {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    BipartiteGraph::new((0..n1).map(|i| format!("g{i}")).collect(), (0..n2).map(|j| format!("m{j}")).collect(), edges)
        .unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn to_mask(set: &FixedBitSet) -> u64 {
    set.ones().fold(0, |m, i| m | 1 << i)
}

pub fn mask_ones(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// Incidence as row masks over attributes.
pub struct MaskContext {
    pub n_obj: usize,
    pub n_attr: usize,
    pub rows: Vec<u64>,
}

impl MaskContext {
    pub fn of(g: &BipartiteGraph) -> Self {
        let mut rows = vec![0u64; g.n1()];
        for &(u, v) in g.edges() {
            rows[u] |= 1 << v;
        }
        Self { n_obj: g.n1(), n_attr: g.n2(), rows }
    }

    pub fn all_obj(&self) -> u64 {
        (1u64 << self.n_obj) - 1
    }

    pub fn all_attr(&self) -> u64 {
        (1u64 << self.n_attr) - 1
    }

    /// Attributes shared by every object in `objs`.
    pub fn up(&self, objs: u64) -> u64 {
        mask_ones(objs).fold(self.all_attr(), |acc, g| acc & self.rows[g])
    }

    /// Objects having every attribute in `attrs`.
    pub fn down(&self, attrs: u64) -> u64 {
        (0..self.n_obj).filter(|&g| self.rows[g] & attrs == attrs).fold(0, |m, g| m | 1 << g)
    }

    /// Every concept, found by closing each attribute subset.
    pub fn all_concepts(&self) -> BTreeSet<(u64, u64)> {
        (0..=self.all_attr())
            .map(|b| {
                let ext = self.down(b);
                (ext, self.up(ext))
            })
            .collect()
    }

    /// Maximal bicliques with both sides nonempty, from the definition: a
    /// full rectangle that no extra object or attribute can extend.
    pub fn maximal_bicliques(&self) -> BTreeSet<(u64, u64)> {
        let mut out = BTreeSet::new();
        for a in 1..=self.all_obj() {
            let b = self.up(a);
            if b == 0 {
                continue;
            }
            let object_fits = (0..self.n_obj).any(|g| a >> g & 1 == 0 && self.rows[g] & b == b);
            let attr_fits =
                (0..self.n_attr).any(|m| b >> m & 1 == 0 && mask_ones(a).all(|g| self.rows[g] >> m & 1 == 1));
            if !object_fits && !attr_fits {
                out.insert((a, b));
            }
        }
        out
    }
}

fn subsets(mask: u64) -> impl Iterator<Item = u64> {
    // Enumerates every submask of `mask`, including 0 and `mask`.
    let mut sub = Some(mask);
    std::iter::from_fn(move || {
        let cur = sub?;
        sub = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

fn minimal_masks(cands: Vec<u64>) -> Vec<u64> {
    cands
        .iter()
        .copied()
        .filter(|&x| !cands.iter().any(|&y| y != x && y & x == y))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Lattice recomputed from scratch: concepts, covers by definition, faces
/// and generators by subset enumeration.
pub struct OracleLattice {
    pub ctx: MaskContext,
    pub concepts: Vec<(u64, u64)>,
    /// `upper[i]`: concepts with strictly larger extent and nothing between.
    pub upper: Vec<Vec<usize>>,
    pub lower: Vec<Vec<usize>>,
}

impl OracleLattice {
    pub fn new(g: &BipartiteGraph) -> Self {
        let ctx = MaskContext::of(g);
        let concepts: Vec<(u64, u64)> = ctx.all_concepts().into_iter().collect();
        let n = concepts.len();
        let lt = |i: usize, j: usize| concepts[i].0 != concepts[j].0 && concepts[i].0 & concepts[j].0 == concepts[i].0;
        let covers: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)))
            .collect();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for &(i, j) in &covers {
            upper[i].push(j);
            lower[j].push(i);
        }
        Self { ctx, concepts, upper, lower }
    }

    pub fn index_of_extent(&self, ext: u64) -> usize {
        self.concepts.iter().position(|c| c.0 == ext).unwrap()
    }

    pub fn intensional_faces(&self, i: usize) -> Vec<u64> {
        self.upper[i].iter().map(|&d| self.concepts[i].1 & !self.concepts[d].1).collect()
    }

    pub fn extensional_faces(&self, i: usize) -> Vec<u64> {
        self.lower[i].iter().map(|&l| self.concepts[i].0 & !self.concepts[l].0).collect()
    }

    /// Minimal `X ⊆ B` with `X'' = B`.
    pub fn minigen_intent(&self, i: usize) -> Vec<u64> {
        let b = self.concepts[i].1;
        let cands = subsets(b).filter(|&x| self.ctx.up(self.ctx.down(x)) == b).collect();
        minimal_masks(cands)
    }

    /// Minimal `X ⊆ A` with `X'' = A`.
    pub fn minigen_extent(&self, i: usize) -> Vec<u64> {
        let a = self.concepts[i].0;
        let cands = subsets(a).filter(|&x| self.ctx.down(self.ctx.up(x)) == a).collect();
        minimal_masks(cands)
    }

    pub fn bicliques(&self) -> Vec<usize> {
        (0..self.concepts.len()).filter(|&i| self.concepts[i].0 != 0 && self.concepts[i].1 != 0).collect()
    }
}

/// Bi-face scores written straight from the defining equations, with a
/// denominator of `|C|` (`equation = false`) or of the refined bicliques
/// keeping a node of the scored type (`equation = true`).
pub fn bf_oracle(g: &BipartiteGraph, equation: bool) -> (Vec<f64>, Vec<f64>) {
    let lat = OracleLattice::new(g);
    let inter = |faces: Vec<u64>| faces.into_iter().reduce(|a, b| a & b).unwrap_or(0);
    let mut refined = Vec::new();
    for i in lat.bicliques() {
        let (a, b) = lat.concepts[i];
        let a_hat = if a.count_ones() > 1 { a & !inter(lat.extensional_faces(i)) } else { a };
        let b_hat = if b.count_ones() > 1 { b & !inter(lat.intensional_faces(i)) } else { b };
        refined.push((a_hat, b_hat));
    }
    let mut gamma1 = Vec::new();
    let mut gamma2 = Vec::new();
    for i in lat.bicliques() {
        let (a, b) = lat.concepts[i];
        if b.count_ones() == 1 {
            gamma1.extend(
                lat.minigen_extent(i).into_iter().filter(|h| h.count_ones() == 1).map(|h| h.trailing_zeros() as usize),
            );
        }
        if a.count_ones() == 1 {
            gamma2.extend(
                lat.minigen_intent(i).into_iter().filter(|h| h.count_ones() == 1).map(|h| h.trailing_zeros() as usize),
            );
        }
    }
    let score = |n: usize, side: &dyn Fn(&(u64, u64)) -> u64, gamma: &[usize]| -> Vec<f64> {
        let denom = if equation { refined.iter().filter(|r| side(r) != 0).count() } else { refined.len() };
        (0..n)
            .map(|x| {
                let inside = refined.iter().filter(|r| side(r) >> x & 1 == 1).count();
                let hits = gamma.iter().filter(|&&t| t == x).count();
                let first = if denom == 0 { 0.0 } else { inside as f64 / denom as f64 };
                let second = if gamma.is_empty() { 0.0 } else { hits as f64 / gamma.len() as f64 };
                first + 1.0 - second
            })
            .collect()
    };
    (score(g.n1(), &|r| r.0, &gamma1), score(g.n2(), &|r| r.1, &gamma2))
}

/// Dense adjacency over unified indices (type-II node `j` at `n1 + j`).
pub fn adjacency(g: &BipartiteGraph) -> Vec<Vec<bool>> {
    let n = g.n_nodes();
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        a[u][g.n1() + v] = true;
        a[g.n1() + v][u] = true;
    }
    a
}

/// All-pairs hop distances by Floyd–Warshall; `None` when unreachable.
pub fn floyd_warshall(g: &BipartiteGraph) -> Vec<Vec<Option<usize>>> {
    let a = adjacency(g);
    let n = a.len();
    let mut d = vec![vec![None; n]; n];
    for i in 0..n {
        d[i][i] = Some(0);
        for j in 0..n {
            if a[i][j] {
                d[i][j] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| x + y < c) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

pub fn closeness_oracle(g: &BipartiteGraph) -> Vec<f64> {
    let d = floyd_warshall(g);
    let (n1, n2) = (g.n1() as f64, g.n2() as f64);
    (0..g.n_nodes())
        .map(|i| {
            let sum: usize = (0..g.n_nodes()).filter(|&j| j != i).filter_map(|j| d[i][j]).sum();
            let numerator = if i < g.n1() { n2 + 2.0 * (n1 - 1.0) } else { n1 + 2.0 * (n2 - 1.0) };
            if sum == 0 {
                0.0
            } else {
                numerator / sum as f64
            }
        })
        .collect()
}

/// Every shortest path from `s` to `t`, listed node by node.
pub fn geodesics(adj: &[Vec<bool>], dist: &[Vec<Option<usize>>], s: usize, t: usize) -> Vec<Vec<usize>> {
    let Some(len) = dist[s][t] else { return Vec::new() };
    let mut out = Vec::new();
    let mut stack = vec![vec![s]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        if last == t {
            out.push(path);
            continue;
        }
        let step = path.len();
        for w in 0..adj.len() {
            if adj[last][w] && dist[s][w] == Some(step) && dist[w][t] == Some(len - step) {
                let mut p = path.clone();
                p.push(w);
                stack.push(p);
            }
        }
    }
    out
}

/// `Σ_{s,t} weight(s, t) · σ_st(w)/σ_st` over ordered pairs `s ≠ t`, both
/// different from `w`, by explicit path listing.
pub fn path_share_oracle(g: &BipartiteGraph, weight: impl Fn(usize, usize) -> f64) -> Vec<f64> {
    let adj = adjacency(g);
    let dist = floyd_warshall(g);
    let n = adj.len();
    let mut out = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t || weight(s, t) == 0.0 {
                continue;
            }
            let paths = geodesics(&adj, &dist, s, t);
            if paths.is_empty() {
                continue;
            }
            for path in &paths {
                for &w in &path[1..path.len() - 1] {
                    out[w] += weight(s, t) / paths.len() as f64;
                }
            }
        }
    }
    out
}

/// Raw betweenness over unordered same-type endpoint pairs.
pub fn betweenness_oracle(g: &BipartiteGraph) -> Vec<f64> {
    let n1 = g.n1();
    let same = move |s: usize, t: usize| if (s < n1) == (t < n1) { 0.5 } else { 0.0 };
    path_share_oracle(g, same)
}

pub fn percolation_oracle(g: &BipartiteGraph, x: &[f64]) -> Vec<f64> {
    let raw = path_share_oracle(g, |s, _| x[s]);
    let total: f64 = x.iter().sum();
    raw.iter().zip(x).map(|(&r, &xw)| if total - xw > 0.0 { r / (total - xw) } else { 0.0 }).collect()
}

/// VoteRank with the votes recomputed from scratch every round.
/// Abilities are kept as exact fractions over `2|I|`.
pub fn vote_rank_oracle(g: &BipartiteGraph) -> Vec<usize> {
    let adj = adjacency(g);
    let n = adj.len();
    let denom = 2 * g.n_edges() as i64;
    let mut ability = vec![denom; n];
    let mut elected = vec![false; n];
    let mut order = Vec::new();
    for _ in 0..n {
        let votes: Vec<i64> =
            (0..n).map(|w| (0..n).filter(|&x| adj[w][x] && !elected[x]).map(|x| ability[x]).sum()).collect();
        let mut best = None;
        for w in (0..n).filter(|&w| !elected[w]) {
            if best.is_none_or(|b: usize| votes[w] > votes[b]) {
                best = Some(w);
            }
        }
        let w = best.unwrap();
        elected[w] = true;
        order.push(w);
        // 1/<k> = n / (2|I|) in units of 1/(2|I|).
        for x in 0..n {
            if adj[w][x] {
                ability[x] = (ability[x] - n as i64).max(0);
            }
        }
    }
    order
}

/// Number of connected components, by BFS over a unified edge list.
pub fn components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    count
}

/// Tau-a by enumerating every pair.
pub fn kendall_oracle(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let mut nc = 0i64;
    let mut nd = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            let s = (x[i] - x[j]) * (y[i] - y[j]);
            if s > 0.0 {
                nc += 1;
            } else if s < 0.0 {
                nd += 1;
            }
        }
    }
    2.0 * (nc - nd) as f64 / (n * (n - 1)) as f64
}
