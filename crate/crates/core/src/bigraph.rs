//! Two-mode network data model, edge-list IO, the Coin-Toss generator,
//! conversion to a formal context, and cut-edge detection.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fca::FormalContext;

/// The two node classes of a bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeType {
    Type1,
    Type2,
}

impl NodeType {
    pub const BOTH: [NodeType; 2] = [NodeType::Type1, NodeType::Type2];

    pub fn as_str(self) -> &'static str {
        match self {
            NodeType::Type1 => "type1",
            NodeType::Type2 => "type2",
        }
    }
}

impl fmt::Display for NodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A node addressed by its class and its index within that class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId {
    pub ty: NodeType,
    pub index: usize,
}

impl NodeId {
    pub fn type1(index: usize) -> Self {
        Self { ty: NodeType::Type1, index }
    }

    pub fn type2(index: usize) -> Self {
        Self { ty: NodeType::Type2, index }
    }
}

/// Field separator of an edge list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeListFormat {
    #[default]
    Tsv,
    Csv,
}

impl EdgeListFormat {
    fn delimiter(self) -> u8 {
        match self {
            EdgeListFormat::Tsv => b'\t',
            EdgeListFormat::Csv => b',',
        }
    }
}

impl FromStr for EdgeListFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsv" => Ok(EdgeListFormat::Tsv),
            "csv" => Ok(EdgeListFormat::Csv),
            other => Err(Error::invalid(format!("unknown edge-list format {other:?} (expected tsv or csv)"))),
        }
    }
}

/// An undirected bipartite graph `(G, M, I)`.
///
/// Nodes also have a unified index: type-I node `i` is `i`, type-II node
/// `j` is `n1 + j`. Traversal-based measures work in that space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    type1: Vec<String>,
    type2: Vec<String>,
    edges: Vec<(usize, usize)>,
    adj1: Vec<Vec<usize>>,
    adj2: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Validates labels and edges; duplicate labels within a class or
    /// duplicate edges are errors.
    pub fn new(type1: Vec<String>, type2: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (labels, what) in [(&type1, "type-I"), (&type2, "type-II")] {
            let mut seen = HashMap::with_capacity(labels.len());
            for l in labels.iter() {
                if seen.insert(l.as_str(), ()).is_some() {
                    return Err(Error::invalid(format!("duplicate {what} label {l:?}")));
                }
            }
        }
        let mut adj1 = vec![Vec::new(); type1.len()];
        let mut adj2 = vec![Vec::new(); type2.len()];
        for &(u, v) in &edges {
            if u >= type1.len() || v >= type2.len() {
                return Err(Error::invalid(format!("edge ({u}, {v}) references a missing node")));
            }
            adj1[u].push(v);
            adj2[v].push(u);
        }
        for list in adj1.iter_mut().chain(adj2.iter_mut()) {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid("duplicate edge"));
            }
        }
        let mut edges = edges;
        edges.sort_unstable();
        Ok(Self { type1, type2, edges, adj1, adj2 })
    }

    /// Builds a graph from label pairs, creating nodes in first-seen order
    /// and collapsing repeated edges.
    pub fn from_label_edges<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Self> {
        let mut b = GraphBuilder::default();
        for (u, v) in pairs {
            b.add_edge(u.as_ref(), v.as_ref());
        }
        b.build()
    }

    pub fn n1(&self) -> usize {
        self.type1.len()
    }

    pub fn n2(&self) -> usize {
        self.type2.len()
    }

    pub fn n_nodes(&self) -> usize {
        self.n1() + self.n2()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn count(&self, ty: NodeType) -> usize {
        match ty {
            NodeType::Type1 => self.n1(),
            NodeType::Type2 => self.n2(),
        }
    }

    pub fn type1_labels(&self) -> &[String] {
        &self.type1
    }

    pub fn type2_labels(&self) -> &[String] {
        &self.type2
    }

    pub fn labels(&self, ty: NodeType) -> &[String] {
        match ty {
            NodeType::Type1 => &self.type1,
            NodeType::Type2 => &self.type2,
        }
    }

    pub fn label(&self, node: NodeId) -> &str {
        &self.labels(node.ty)[node.index]
    }

    /// `(type-I index, type-II index)` pairs, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj1.get(u).is_some_and(|a| a.binary_search(&v).is_ok())
    }

    /// Type-II neighbours of type-I node `u`.
    pub fn neighbors1(&self, u: usize) -> &[usize] {
        &self.adj1[u]
    }

    /// Type-I neighbours of type-II node `v`.
    pub fn neighbors2(&self, v: usize) -> &[usize] {
        &self.adj2[v]
    }

    pub fn degree(&self, node: NodeId) -> usize {
        match node.ty {
            NodeType::Type1 => self.adj1[node.index].len(),
            NodeType::Type2 => self.adj2[node.index].len(),
        }
    }

    pub fn find(&self, ty: NodeType, label: &str) -> Option<NodeId> {
        self.labels(ty).iter().position(|l| l == label).map(|index| NodeId { ty, index })
    }

    pub fn unified(&self, node: NodeId) -> usize {
        match node.ty {
            NodeType::Type1 => node.index,
            NodeType::Type2 => self.n1() + node.index,
        }
    }

    pub fn node_of(&self, unified: usize) -> NodeId {
        if unified < self.n1() {
            NodeId::type1(unified)
        } else {
            NodeId::type2(unified - self.n1())
        }
    }

    /// Adjacency lists over unified indices.
    pub fn unified_adjacency(&self) -> Vec<Vec<usize>> {
        let n1 = self.n1();
        self.adj1.iter().map(|vs| vs.iter().map(|&v| n1 + v).collect()).chain(self.adj2.iter().cloned()).collect()
    }

    /// The adjacency matrix as a formal context: objects are type-I nodes,
    /// attributes are type-II nodes.
    pub fn to_formal_context(&self) -> FormalContext {
        FormalContext::from_pairs(self.type1.clone(), self.type2.clone(), self.edges.iter().copied())
            .expect("graph labels and edges are validated on construction")
    }

    /// Inverse of [`BipartiteGraph::to_formal_context`].
    pub fn from_formal_context(ctx: &FormalContext) -> Self {
        let edges = (0..ctx.n_objects()).flat_map(|g| ctx.row(g).ones().map(move |m| (g, m))).collect();
        Self::new(ctx.objects().to_vec(), ctx.attributes().to_vec(), edges).expect("context labels are unique")
    }

    pub fn stats(&self) -> NetworkStats {
        let possible = self.n1() * self.n2();
        let density_percent = if possible == 0 { 0.0 } else { 100.0 * self.n_edges() as f64 / possible as f64 };
        NetworkStats { n1: self.n1(), n2: self.n2(), edges: self.n_edges(), density_percent }
    }

    /// Writes the edge list in the loader's format (no header).
    pub fn write_edge_list<W: Write>(&self, writer: W, format: EdgeListFormat) -> Result<()> {
        let mut w = csv::WriterBuilder::new().delimiter(format.delimiter()).has_headers(false).from_writer(writer);
        for &(u, v) in &self.edges {
            w.write_record([self.type1[u].as_str(), self.type2[v].as_str()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes a node manifest listing every node, so isolated nodes survive
    /// a round trip through an edge list.
    pub fn write_manifest<W: Write>(&self, mut writer: W) -> Result<()> {
        writeln!(writer, "[type1]")?;
        for l in &self.type1 {
            writeln!(writer, "{l}")?;
        }
        writeln!(writer, "[type2]")?;
        for l in &self.type2 {
            writeln!(writer, "{l}")?;
        }
        Ok(())
    }
}

/// Summary statistics of a two-mode network.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkStats {
    pub n1: usize,
    pub n2: usize,
    pub edges: usize,
    /// `100 · |I| / (|G| · |M|)`.
    pub density_percent: f64,
}

/// Incremental construction by label.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    type1: Vec<String>,
    type2: Vec<String>,
    index1: HashMap<String, usize>,
    index2: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    seen: std::collections::HashSet<(usize, usize)>,
    duplicates: usize,
}

impl GraphBuilder {
    pub fn add_node(&mut self, ty: NodeType, label: &str) -> usize {
        let (labels, index) = match ty {
            NodeType::Type1 => (&mut self.type1, &mut self.index1),
            NodeType::Type2 => (&mut self.type2, &mut self.index2),
        };
        if let Some(&i) = index.get(label) {
            return i;
        }
        labels.push(label.to_owned());
        index.insert(label.to_owned(), labels.len() - 1);
        labels.len() - 1
    }

    /// Adds an edge; returns false if it was already present.
    pub fn add_edge(&mut self, type1: &str, type2: &str) -> bool {
        let u = self.add_node(NodeType::Type1, type1);
        let v = self.add_node(NodeType::Type2, type2);
        if self.seen.insert((u, v)) {
            self.edges.push((u, v));
            true
        } else {
            self.duplicates += 1;
            false
        }
    }

    pub fn duplicates(&self) -> usize {
        self.duplicates
    }

    pub fn build(self) -> Result<BipartiteGraph> {
        BipartiteGraph::new(self.type1, self.type2, self.edges)
    }
}

/// A parsed edge list plus the number of repeated records that were collapsed.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: BipartiteGraph,
    pub duplicate_edges: usize,
}

/// Parses a `type1 <sep> type2` edge list. Lines starting with `#` are ignored.
pub fn parse_edge_list<R: Read>(source: R, format: EdgeListFormat) -> Result<LoadedGraph> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(format.delimiter())
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(source);
    let mut builder = GraphBuilder::default();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            Error::Parse { line, message: e.to_string() }
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(Error::Parse { line, message: format!("expected 2 fields, found {}", record.len()) });
        }
        if record[0].is_empty() || record[1].is_empty() {
            return Err(Error::Parse { line, message: "empty node label".into() });
        }
        builder.add_edge(&record[0], &record[1]);
    }
    if builder.edges.is_empty() {
        return Err(Error::invalid("edge list contains no edges"));
    }
    let duplicate_edges = builder.duplicates();
    Ok(LoadedGraph { graph: builder.build()?, duplicate_edges })
}

/// Loads an edge list, logging a warning when duplicate records were collapsed.
pub fn load_edge_list<R: Read>(source: R, format: EdgeListFormat) -> Result<BipartiteGraph> {
    let loaded = parse_edge_list(source, format)?;
    if loaded.duplicate_edges > 0 {
        log::warn!("collapsed {} duplicate edge records", loaded.duplicate_edges);
    }
    Ok(loaded.graph)
}

/// Adds the nodes declared in a manifest (`[type1]` / `[type2]` sections,
/// one label per line). Nodes already in the graph keep their index; new
/// ones are appended as isolated nodes.
pub fn apply_manifest<R: Read>(graph: &BipartiteGraph, manifest: R) -> Result<BipartiteGraph> {
    let mut b = GraphBuilder::default();
    for l in graph.type1_labels() {
        b.add_node(NodeType::Type1, l);
    }
    for l in graph.type2_labels() {
        b.add_node(NodeType::Type2, l);
    }
    let mut section = None;
    for (i, line) in BufReader::new(manifest).lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line {
            "[type1]" => section = Some(NodeType::Type1),
            "[type2]" => section = Some(NodeType::Type2),
            label => {
                let ty = section.ok_or_else(|| Error::Parse {
                    line: i as u64 + 1,
                    message: "node label before any [type1]/[type2] header".into(),
                })?;
                b.add_node(ty, label);
            }
        }
    }
    BipartiteGraph::new(b.type1, b.type2, graph.edges().to_vec())
}

/// Coin-Toss null model: each of the `n1 · n2` possible edges is present
/// independently with probability `p`. Type-I nodes are labelled `u0..`,
/// type-II nodes `v0..`.
pub fn generate_coin_toss(n1: usize, n2: usize, p: f64, seed: u64) -> Result<BipartiteGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("edge probability {p} is outside [0, 1]")));
    }
    if n1 == 0 || n2 == 0 {
        return Err(Error::invalid("both node classes need at least one node"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n1 {
        for v in 0..n2 {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    BipartiteGraph::new((0..n1).map(|i| format!("u{i}")).collect(), (0..n2).map(|j| format!("v{j}")).collect(), edges)
}

/// Cut edges, as sorted `(type-I, type-II)` index pairs.
///
/// Iterative depth-first search with low-link values. Graphs are simple, so
/// skipping the parent vertex is enough to ignore the tree edge.
pub fn bridges(g: &BipartiteGraph) -> Vec<(usize, usize)> {
    let adj = g.unified_adjacency();
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut time = 0;
    // (node, parent, next neighbour position)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        let (a, b) = (parent.min(v), parent.max(v));
                        out.push((a, b - g.n1()));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_line_graph() {
        let g = load_edge_list("a\tb\n".as_bytes(), EdgeListFormat::Tsv).unwrap();
        let s = g.stats();
        assert_eq!((s.n1, s.n2, s.edges), (1, 1, 1));
        assert_eq!(s.density_percent, 100.0);
    }

    #[test]
    fn comments_and_duplicates() {
        let src = "# header\nx,1\ny,1\nx,1\nx,2\n";
        let loaded = parse_edge_list(src.as_bytes(), EdgeListFormat::Csv).unwrap();
        assert_eq!(loaded.duplicate_edges, 1);
        assert_eq!(loaded.graph.type1_labels(), &["x", "y"]);
        assert_eq!(loaded.graph.type2_labels(), &["1", "2"]);
        assert_eq!(loaded.graph.n_edges(), 3);
    }

    #[test]
    fn malformed_record_reports_line() {
        let err = parse_edge_list("a\tb\nc\n".as_bytes(), EdgeListFormat::Tsv).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn empty_input_is_invalid() {
        let err = parse_edge_list("# nothing\n".as_bytes(), EdgeListFormat::Tsv).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn labels_are_case_sensitive_and_may_repeat_across_types() {
        let g = BipartiteGraph::from_label_edges(&[("a", "a"), ("A", "a")]).unwrap();
        assert_eq!(g.n1(), 2);
        assert_eq!(g.n2(), 1);
    }

    #[test]
    fn manifest_adds_isolated_nodes() {
        let g = BipartiteGraph::from_label_edges(&[("a", "x")]).unwrap();
        let g = apply_manifest(&g, "[type1]\na\nb\n[type2]\ny\n".as_bytes()).unwrap();
        assert_eq!(g.type1_labels(), &["a", "b"]);
        assert_eq!(g.type2_labels(), &["x", "y"]);
        assert_eq!(g.n_edges(), 1);
        assert!(apply_manifest(&g, "orphan\n".as_bytes()).is_err());
    }

    #[test]
    fn context_conversion() {
        let g = BipartiteGraph::new(vec!["a".into(), "b".into(), "c".into()], vec!["x".into(), "y".into()], vec![])
            .unwrap();
        let ctx = g.to_formal_context();
        assert!((0..3).all(|i| (0..2).all(|j| !ctx.incident(i, j))));
        let full: Vec<_> = (0..3).flat_map(|i| (0..2).map(move |j| (i, j))).collect();
        let k32 = BipartiteGraph::new(g.type1_labels().to_vec(), g.type2_labels().to_vec(), full).unwrap();
        let ctx = k32.to_formal_context();
        assert!((0..3).all(|i| (0..2).all(|j| ctx.incident(i, j))));
        assert_eq!(BipartiteGraph::from_formal_context(&ctx), k32);
    }

    #[test]
    fn coin_toss_extremes() {
        assert_eq!(generate_coin_toss(4, 3, 0.0, 1).unwrap().n_edges(), 0);
        assert_eq!(generate_coin_toss(4, 3, 1.0, 1).unwrap().n_edges(), 12);
        assert!(generate_coin_toss(4, 3, 1.5, 1).is_err());
        assert!(generate_coin_toss(4, 3, -0.1, 1).is_err());
        assert_eq!(generate_coin_toss(30, 20, 0.3, 9).unwrap(), generate_coin_toss(30, 20, 0.3, 9).unwrap());
    }

    #[test]
    fn four_cycle_has_no_bridges() {
        let g = BipartiteGraph::from_label_edges(&[("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")]).unwrap();
        assert!(bridges(&g).is_empty());
    }

    #[test]
    fn path_edges_are_all_bridges() {
        let g = BipartiteGraph::from_label_edges(&[("a", "x"), ("b", "x"), ("b", "y")]).unwrap();
        assert_eq!(bridges(&g), vec![(0, 0), (1, 0), (1, 1)]);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = generate_coin_toss(12, 7, 0.4, 3).unwrap();
        for format in [EdgeListFormat::Tsv, EdgeListFormat::Csv] {
            let mut buf = Vec::new();
            g.write_edge_list(&mut buf, format).unwrap();
            let mut manifest = Vec::new();
            g.write_manifest(&mut manifest).unwrap();
            let back = load_edge_list(buf.as_slice(), format).unwrap();
            let back = apply_manifest(&back, manifest.as_slice()).unwrap();
            // Isolated nodes are appended, so compare as label sets.
            assert_eq!(back.n_edges(), g.n_edges());
            for &(u, v) in g.edges() {
                let bu = back.find(NodeType::Type1, &g.type1_labels()[u]).unwrap().index;
                let bv = back.find(NodeType::Type2, &g.type2_labels()[v]).unwrap().index;
                assert!(back.has_edge(bu, bv));
            }
        }
    }
}
