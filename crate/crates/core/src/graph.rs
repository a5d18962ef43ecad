//! Undirected simple graphs with stable vertex identifiers.
//!
//! Vertex ids are plain integers. Graphs read from the text format use the
//! dense range `0..n`, but subgraphs (components, induced cores) keep the ids
//! of the graph they came from.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// An unordered edge, stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub VertexId, pub VertexId);

impl Edge {
    pub fn new(u: VertexId, v: VertexId) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn other(self, w: VertexId) -> VertexId {
        if w == self.0 {
            self.1
        } else {
            self.0
        }
    }

    pub fn contains(self, w: VertexId) -> bool {
        self.0 == w || self.1 == w
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    labels: BTreeMap<VertexId, String>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on the dense vertex range `0..n` with no edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Graph::new();
        for v in 0..n {
            g.add_vertex(v);
        }
        g
    }

    /// Builds a graph on `0..n` from an edge list, rejecting loops and repeats.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Adds a fresh vertex with id one past the current maximum.
    pub fn push_vertex(&mut self) -> VertexId {
        let v = self.next_id();
        self.add_vertex(v);
        v
    }

    pub fn next_id(&self) -> VertexId {
        self.adj.keys().next_back().map_or(0, |&m| m + 1)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::Loop(u));
        }
        if !self.adj.contains_key(&u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.adj.contains_key(&v) {
            return Err(Error::UnknownVertex(v));
        }
        if !self.adj.get_mut(&u).unwrap().insert(v) {
            let e = Edge::new(u, v);
            return Err(Error::DuplicateEdge(e.0, e.1));
        }
        self.adj.get_mut(&v).unwrap().insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        let removed = self.adj.get_mut(&u).is_some_and(|s| s.remove(&v));
        if removed {
            self.adj.get_mut(&v).unwrap().remove(&u);
        }
        removed
    }

    pub fn set_label(&mut self, v: VertexId, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<VertexId, String> {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).min().unwrap_or(0)
    }

    /// Edges in ascending `(min, max)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, s)| s.range(u + 1..).map(move |&v| Edge(u, v)))
    }

    /// Ids are exactly `0..n`.
    pub fn is_dense(&self) -> bool {
        self.adj.keys().enumerate().all(|(i, &v)| i == v)
    }

    /// Copy with vertices renumbered `0..n` in id order; returns the old ids.
    pub fn relabel_dense(&self) -> (Graph, Vec<VertexId>) {
        let old: Vec<VertexId> = self.vertices().collect();
        let index: BTreeMap<VertexId, VertexId> =
            old.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::with_vertices(old.len());
        for e in self.edges() {
            g.add_edge(index[&e.0], index[&e.1]).unwrap();
        }
        for (v, l) in &self.labels {
            g.set_label(index[v], l.clone());
        }
        (g, old)
    }

    /// Applies a vertex renaming. `map` must be injective on the vertex set.
    pub fn relabel(&self, map: impl Fn(VertexId) -> VertexId) -> Graph {
        let mut g = Graph::new();
        for v in self.vertices() {
            g.add_vertex(map(v));
        }
        for e in self.edges() {
            g.add_edge(map(e.0), map(e.1)).expect("relabel map must be injective");
        }
        for (v, l) in &self.labels {
            g.set_label(map(*v), l.clone());
        }
        g
    }

    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph::new();
        for &v in keep {
            if self.contains_vertex(v) {
                g.add_vertex(v);
                if let Some(l) = self.label(v) {
                    g.set_label(v, l);
                }
            }
        }
        for e in self.edges() {
            if keep.contains(&e.0) && keep.contains(&e.1) {
                g.add_edge(e.0, e.1).unwrap();
            }
        }
        g
    }

    /// Disjoint union; the ids of `other` are shifted by `offset`.
    pub fn disjoint_union(&self, other: &Graph, offset: VertexId) -> Result<Graph> {
        let mut g = self.clone();
        for v in other.vertices() {
            if !g.add_vertex(v + offset) {
                return Err(Error::Precondition(format!(
                    "vertex {} already present in union",
                    v + offset
                )));
            }
        }
        for e in other.edges() {
            g.add_edge(e.0 + offset, e.1 + offset)?;
        }
        Ok(g)
    }

    pub fn degree_multiset(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for s in self.adj.values() {
            *m.entry(s.len()).or_insert(0) += 1;
        }
        m
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }
}

/// The `m x n` grid graph. Vertex `(i, j)` (0-based row `i`, column `j`) gets id `i * n + j`.
pub fn make_grid(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition("grid dimensions must be positive".into()));
    }
    let mut g = Graph::with_vertices(m * n);
    for i in 0..m {
        for j in 0..n {
            let v = i * n + j;
            if j + 1 < n {
                g.add_edge(v, v + 1)?;
            }
            if i + 1 < m {
                g.add_edge(v, v + n)?;
            }
        }
    }
    Ok(g)
}

/// The `k x l x m` 3d grid; vertex `(a, b, c)` gets id `(a * l + b) * m + c`.
pub fn make_grid_3d(k: usize, l: usize, m: usize) -> Result<Graph> {
    if k == 0 || l == 0 || m == 0 {
        return Err(Error::Precondition("grid dimensions must be positive".into()));
    }
    let id = |a: usize, b: usize, c: usize| (a * l + b) * m + c;
    let mut g = Graph::with_vertices(k * l * m);
    for a in 0..k {
        for b in 0..l {
            for c in 0..m {
                if a + 1 < k {
                    g.add_edge(id(a, b, c), id(a + 1, b, c))?;
                }
                if b + 1 < l {
                    g.add_edge(id(a, b, c), id(a, b + 1, c))?;
                }
                if c + 1 < m {
                    g.add_edge(id(a, b, c), id(a, b, c + 1))?;
                }
            }
        }
    }
    Ok(g)
}

pub fn path_graph(n: usize) -> Graph {
    let mut g = Graph::with_vertices(n);
    for v in 1..n {
        g.add_edge(v - 1, v).unwrap();
    }
    g
}

pub fn cycle_graph(n: usize) -> Graph {
    let mut g = path_graph(n);
    if n >= 3 {
        g.add_edge(n - 1, 0).unwrap();
    }
    g
}

pub fn star_graph(leaves: usize) -> Graph {
    let mut g = Graph::with_vertices(leaves + 1);
    for v in 1..=leaves {
        g.add_edge(0, v).unwrap();
    }
    g
}

pub fn complete_graph(n: usize) -> Graph {
    let mut g = Graph::with_vertices(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::with_vertices(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let mut g = Graph::with_vertices(n);
    for u in 0..n {
        for b in 0..d {
            let v = u ^ (1 << b);
            if u < v {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// A set of allowed vertex degrees.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DegreeSet(BTreeSet<usize>);

impl DegreeSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidDegreeSet("empty".into()));
        }
        if set.contains(&0) {
            return Err(Error::InvalidDegreeSet("degrees must be positive".into()));
        }
        Ok(DegreeSet(set))
    }

    /// The empty set, only meaningful as an operand of unions (e.g. `D2 = {}`).
    pub fn empty() -> Self {
        DegreeSet(BTreeSet::new())
    }

    pub fn contains(&self, d: usize) -> bool {
        self.0.contains(&d)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> Option<usize> {
        self.0.iter().next_back().copied()
    }

    pub fn smallest(&self) -> Option<usize> {
        self.0.iter().next().copied()
    }

    pub fn is_subset(&self, other: &DegreeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &DegreeSet) -> DegreeSet {
        DegreeSet(self.0.union(&other.0).copied().collect())
    }

    /// Bitmask with bit `d - 1` set for each member.
    pub fn mask(&self) -> u32 {
        self.0.iter().fold(0, |m, &d| m | 1 << (d - 1))
    }

    pub fn from_mask(mask: u32) -> DegreeSet {
        DegreeSet((0..32).filter(|b| mask >> b & 1 == 1).map(|b| b as usize + 1).collect())
    }

    /// Parses `{1,2,4}` or `1,2,4`.
    pub fn parse(text: &str) -> Result<DegreeSet> {
        let t = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut members = Vec::new();
        for part in t.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            members.push(
                part.parse::<usize>()
                    .map_err(|_| Error::InvalidDegreeSet(format!("bad member {part:?}")))?,
            );
        }
        DegreeSet::new(members)
    }
}

impl fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Distinct vertex degrees of `g`.
pub fn degree_set(g: &Graph) -> Result<DegreeSet> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    DegreeSet::new(g.vertices().map(|v| g.degree(v)))
}

/// `D + k`, erroring if any member would drop to zero or below.
pub fn shift_degree_set(d: &DegreeSet, k: i64) -> Result<DegreeSet> {
    let mut out = BTreeSet::new();
    for m in d.iter() {
        let s = m as i64 + k;
        if s <= 0 {
            return Err(Error::InvalidDegreeSet(format!("{m}{k:+} is not positive")));
        }
        out.insert(s as usize);
    }
    Ok(DegreeSet(out))
}

/// Maximal connected subgraphs, ordered by smallest vertex id.
pub fn connected_components(g: &Graph) -> Vec<Graph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in g.vertices() {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            comp.insert(v);
            for w in g.neighbors(v) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        out.push(g.induced_subgraph(&comp));
    }
    out
}

/// Proper 2-colouring if one exists (`false`/`true` per vertex).
pub fn two_coloring(g: &Graph) -> Option<BTreeMap<VertexId, bool>> {
    let mut color = BTreeMap::new();
    for start in g.vertices() {
        if color.contains_key(&start) {
            continue;
        }
        color.insert(start, false);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let c = color[&v];
            for w in g.neighbors(v) {
                match color.get(&w) {
                    Some(&cw) if cw == c => return None,
                    Some(_) => {}
                    None => {
                        color.insert(w, !c);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    Some(color)
}

pub fn is_bipartite(g: &Graph) -> bool {
    two_coloring(g).is_some()
}

/// Parses the plain text format: a vertex count line followed by `u v` edge
/// lines with `u < v < n`. Lines starting with `#` are comments.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
    let (line_no, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing vertex count".into(),
    })?;
    let n: usize = header.trim().parse().map_err(|_| Error::Parse {
        line: line_no,
        column: column_of(header, header.trim()),
        message: format!("expected vertex count, found {:?}", header.trim()),
    })?;
    let mut g = Graph::with_vertices(n);
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                column: 1,
                message: format!("expected `u v`, found {:?}", line.trim()),
            });
        }
        let mut ends = [0usize; 2];
        for (k, f) in fields.iter().enumerate() {
            ends[k] = f.parse().map_err(|_| Error::Parse {
                line: line_no,
                column: column_of(line, f),
                message: format!("expected vertex id, found {f:?}"),
            })?;
            if ends[k] >= n {
                return Err(Error::Parse {
                    line: line_no,
                    column: column_of(line, f),
                    message: format!("vertex {} out of range 0..{n}", ends[k]),
                });
            }
        }
        g.add_edge(ends[0], ends[1])?;
    }
    Ok(g)
}

fn column_of(line: &str, field: &str) -> usize {
    // `field` is a subslice of `line`
    (field.as_ptr() as usize).saturating_sub(line.as_ptr() as usize) + 1
}

/// Canonical text form. Requires dense ids.
pub fn serialize_graph(g: &Graph) -> Result<String> {
    if !g.is_dense() {
        return Err(Error::Precondition(
            "text format needs vertex ids 0..n; relabel first".into(),
        ));
    }
    let mut out = format!("{}\n", g.vertex_count());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.0, e.1));
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<VertexId, String>,
}

pub fn graph_to_json(g: &Graph) -> Result<serde_json::Value> {
    if !g.is_dense() {
        return Err(Error::Precondition(
            "JSON format needs vertex ids 0..n; relabel first".into(),
        ));
    }
    let doc = GraphJson {
        n: g.vertex_count(),
        edges: g.edges().map(|e| [e.0, e.1]).collect(),
        labels: g.labels().clone(),
    };
    Ok(serde_json::to_value(doc)?)
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let doc: GraphJson = serde_json::from_str(text)?;
    let mut g = Graph::with_vertices(doc.n);
    for [u, v] in doc.edges {
        if u >= doc.n || v >= doc.n {
            return Err(Error::UnknownVertex(u.max(v)));
        }
        g.add_edge(u, v)?;
    }
    for (v, l) in doc.labels {
        if v >= doc.n {
            return Err(Error::UnknownVertex(v));
        }
        g.set_label(v, l);
    }
    Ok(g)
}

/// Reads either format, deciding by the first non-blank character.
pub fn read_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        graph_from_json(text)
    } else {
        parse_graph(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        let g = make_grid(3, 5).unwrap();
        assert_eq!(g.vertex_count(), 15);
        assert_eq!(g.edge_count(), 22);
        let g = make_grid(1, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        let g = make_grid(2, 2).unwrap();
        assert_eq!(g, cycle_graph(4).relabel(|v| [0, 1, 3, 2][v]));
        assert!(make_grid(0, 3).is_err());
    }

    #[test]
    fn degree_sets() {
        assert_eq!(degree_set(&cycle_graph(4)).unwrap(), DegreeSet::new([2]).unwrap());
        assert_eq!(degree_set(&path_graph(3)).unwrap(), DegreeSet::new([1, 2]).unwrap());
        assert_eq!(degree_set(&star_graph(4)).unwrap(), DegreeSet::new([1, 4]).unwrap());
        assert_eq!(degree_set(&Graph::new()), Err(Error::EmptyGraph));
        assert_eq!(degree_set(&Graph::with_vertices(1)), Err(Error::IsolatedVertex(0)));
    }

    #[test]
    fn components() {
        assert_eq!(connected_components(&cycle_graph(4)).len(), 1);
        let g = cycle_graph(4).disjoint_union(&path_graph(2), 4).unwrap();
        let comps = connected_components(&g);
        let sizes: Vec<usize> = comps.iter().map(Graph::vertex_count).collect();
        assert_eq!(sizes, vec![4, 2]);
        assert_eq!(comps[1].vertices().collect::<Vec<_>>(), vec![4, 5]);
        assert!(connected_components(&Graph::new()).is_empty());
    }

    #[test]
    fn bipartite() {
        assert!(is_bipartite(&cycle_graph(4)));
        assert!(!is_bipartite(&cycle_graph(3)));
        assert!(is_bipartite(&star_graph(5)));
    }

    #[test]
    fn shifts() {
        let d = DegreeSet::new([1, 2, 4]).unwrap();
        assert_eq!(shift_degree_set(&d, 1).unwrap(), DegreeSet::new([2, 3, 5]).unwrap());
        let d = DegreeSet::new([2, 3]).unwrap();
        assert_eq!(shift_degree_set(&d, 1).unwrap(), DegreeSet::new([3, 4]).unwrap());
        assert!(shift_degree_set(&DegreeSet::new([1]).unwrap(), -1).is_err());
        assert_eq!(DegreeSet::parse("{1, 2,4}").unwrap().to_string(), "{1,2,4}");
    }

    #[test]
    fn text_format() {
        let g = parse_graph("2\n0 1\n").unwrap();
        assert_eq!(g, path_graph(2));
        let t = "# square\n4\n0 1\n1 2\n\n2 3\n0 3\n";
        let g = parse_graph(t).unwrap();
        assert_eq!(serialize_graph(&g).unwrap(), "4\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(parse_graph("2\n0 0\n"), Err(Error::Loop(0)));
        assert_eq!(parse_graph("3\n0 1\n1 0\n"), Err(Error::DuplicateEdge(0, 1)));
        match parse_graph("3\n0 x\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_graph("2\n0 5\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn json_format() {
        let mut g = cycle_graph(4);
        g.set_label(2, "x");
        let v = graph_to_json(&g).unwrap();
        let back = read_graph(&v.to_string()).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.label(2), Some("x"));
    }
}
