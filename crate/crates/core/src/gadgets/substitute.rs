//! Vertex substitutions: every vertex of the input graph becomes a copy of a
//! catalog gadget, every edge a link between two interconnectors.

use std::collections::BTreeMap;

use serde::Serialize;

use super::catalog::{Gadget, GadgetKind};
use crate::embed::{Dim, Embedding};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::orientation::{Axis, OrientationMap};

/// Where one original vertex went.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CopyInfo {
    /// Index of the copy, in ascending order of original vertex ids.
    pub index: usize,
    /// Gadget vertex `i` of this copy is output vertex `offset + i`.
    pub offset: VertexId,
    /// The copy is used turned by a quarter, so its horizontal and vertical
    /// roles are exchanged.
    pub rotated: bool,
}

/// How one original edge is realized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Link {
    /// A single external edge between two active interconnectors.
    External { edge: [VertexId; 2] },
    /// A four-cycle `[a, n1, b, n2]` whose corners `a` and `b` are the
    /// identified corners of the two vertex squares.
    EdgeSquare { square: [VertexId; 4] },
}

/// The interconnector an original edge uses at one of its ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActiveEnd {
    pub original: VertexId,
    pub label: String,
    pub vertex: VertexId,
}

/// Bookkeeping from the input graph to the substituted graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionMap {
    pub kind: GadgetKind,
    pub gadget_vertices: usize,
    pub vertex_to_copy: BTreeMap<VertexId, CopyInfo>,
    pub edge_to_link: BTreeMap<Edge, Link>,
    pub active_interconnectors: BTreeMap<Edge, [ActiveEnd; 2]>,
    /// Pendant leaves added on active interconnectors, with their axis.
    pub plugs: Vec<(Edge, Axis)>,
}

impl SubstitutionMap {
    fn new(kind: GadgetKind, gadget_vertices: usize) -> Self {
        SubstitutionMap {
            kind,
            gadget_vertices,
            vertex_to_copy: BTreeMap::new(),
            edge_to_link: BTreeMap::new(),
            active_interconnectors: BTreeMap::new(),
            plugs: Vec::new(),
        }
    }

    /// The copy an output vertex belongs to, if it belongs to a vertex copy.
    pub fn copy_of(&self, v: VertexId) -> Option<(VertexId, &CopyInfo)> {
        self.vertex_to_copy
            .iter()
            .find(|(_, c)| v >= c.offset && v < c.offset + self.gadget_vertices)
            .map(|(&o, c)| (o, c))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let copies: Vec<_> = self
            .vertex_to_copy
            .iter()
            .map(|(v, c)| serde_json::json!({"vertex": v, "copy": c}))
            .collect();
        let links: Vec<_> = self
            .edge_to_link
            .iter()
            .map(|(e, l)| {
                serde_json::json!({
                    "edge": [e.0, e.1],
                    "link": l,
                    "active": self.active_interconnectors.get(e),
                })
            })
            .collect();
        let plugs: Vec<_> = self
            .plugs
            .iter()
            .map(|(e, a)| serde_json::json!({"edge": [e.0, e.1], "axis": a.to_string()}))
            .collect();
        serde_json::json!({
            "kind": self.kind.name(),
            "gadget_vertices": self.gadget_vertices,
            "vertex_to_copy": copies,
            "edge_to_link": links,
            "plugs": plugs,
        })
    }
}

fn check_degrees(g: &Graph, limit: usize) -> Result<()> {
    for v in g.vertices() {
        if g.degree(v) > limit {
            return Err(Error::DegreeTooLarge {
                vertex: v,
                degree: g.degree(v),
                limit,
            });
        }
    }
    Ok(())
}

fn label_of(f: &OrientationMap, e: Edge) -> Result<Axis> {
    match f.get(e.0, e.1) {
        Some(a @ (Axis::Horizontal | Axis::Vertical)) => Ok(a),
        _ => Err(Error::IncompleteOrientation(e.0, e.1)),
    }
}

/// Per vertex: whether the copy is rotated, and the interconnector label
/// each incident edge takes.
type Assignment = BTreeMap<VertexId, (bool, BTreeMap<Edge, String>)>;

/// Horizontal edges take the horizontal interconnectors and vertical edges
/// the vertical ones, in catalog order; a lone edge on an axis takes the
/// second interconnector of the pair when it leads to a higher vertex id, so
/// that a single edge links `x` to `z`. With `may_rotate`, a vertex whose
/// edges only fit the quarter-turned gadget uses it turned.
fn assign_by_orientation(g: &Graph, f: &OrientationMap, gadget: &Gadget, may_rotate: bool) -> Result<Assignment> {
    let mut out = Assignment::new();
    for v in g.vertices() {
        let mut by_axis: BTreeMap<Axis, Vec<Edge>> = BTreeMap::new();
        for w in g.neighbors(v) {
            let e = Edge::new(v, w);
            by_axis.entry(label_of(f, e)?).or_default().push(e);
        }
        let count = |a: Axis| by_axis.get(&a).map_or(0, Vec::len);
        let fits = |rotated: bool| {
            [Axis::Horizontal, Axis::Vertical].iter().all(|&a| {
                let slot = if rotated { a.flip() } else { a };
                count(a) <= gadget.on_axis(slot).len()
            })
        };
        let rotated = if fits(false) {
            false
        } else if may_rotate && fits(true) {
            true
        } else {
            return Err(Error::Gadget(format!(
                "vertex {v} has {} horizontal and {} vertical edges, which the {} cannot take",
                count(Axis::Horizontal),
                count(Axis::Vertical),
                gadget.kind
            )));
        };
        let mut labels = BTreeMap::new();
        for (axis, edges) in &by_axis {
            let slot = if rotated { axis.flip() } else { *axis };
            let slots = gadget.on_axis(slot);
            if let ([e], [_, second]) = (edges.as_slice(), slots.as_slice()) {
                if e.other(v) > v {
                    labels.insert(*e, second.label.clone());
                    continue;
                }
            }
            for (e, i) in edges.iter().zip(slots) {
                labels.insert(*e, i.label.clone());
            }
        }
        out.insert(v, (rotated, labels));
    }
    Ok(out)
}

/// Builds the substituted graph from a per-vertex assignment. With `plugs`,
/// every active interconnector also receives a pendant leaf.
fn build(g: &Graph, gadget: &Gadget, assignment: &Assignment, f: Option<&OrientationMap>, plugs: bool) -> Result<(Graph, SubstitutionMap)> {
    let n = gadget.vertex_count();
    let mut map = SubstitutionMap::new(gadget.kind, n);
    let mut out = Graph::new();
    for (index, v) in g.vertices().enumerate() {
        let offset = index * n;
        for i in gadget.graph.vertices() {
            out.add_vertex(offset + i);
        }
        for e in gadget.graph.edges() {
            out.add_edge(offset + e.0, offset + e.1)?;
        }
        map.vertex_to_copy.insert(
            v,
            CopyInfo {
                index,
                offset,
                rotated: assignment[&v].0,
            },
        );
    }
    let end = |v: VertexId, e: Edge| -> Result<ActiveEnd> {
        let label = assignment[&v].1.get(&e).ok_or_else(|| {
            Error::Gadget(format!("edge {}-{} has no interconnector at {v}", e.0, e.1))
        })?;
        let i = gadget
            .interconnector(label)
            .ok_or_else(|| Error::Gadget(format!("{} has no interconnector {label}", gadget.kind)))?;
        Ok(ActiveEnd {
            original: v,
            label: label.clone(),
            vertex: map.vertex_to_copy[&v].offset + i.id,
        })
    };
    let mut pending_plugs = Vec::new();
    for e in g.edges() {
        let ends = [end(e.0, e)?, end(e.1, e)?];
        out.add_edge(ends[0].vertex, ends[1].vertex)?;
        map.edge_to_link.insert(
            e,
            Link::External {
                edge: [ends[0].vertex, ends[1].vertex],
            },
        );
        if plugs {
            let axis = match f {
                Some(f) => label_of(f, e)?.flip(),
                None => Axis::Undefined,
            };
            for a in &ends {
                pending_plugs.push((a.vertex, axis));
            }
        }
        map.active_interconnectors.insert(e, ends);
    }
    for (v, axis) in pending_plugs {
        let p = out.push_vertex();
        out.add_edge(v, p)?;
        map.plugs.push((Edge::new(v, p), axis));
    }
    Ok((out, map))
}

/// Double-ladder substitution: collinear edges at a vertex meet opposed
/// interconnectors, orthogonal ones consecutive interconnectors.
pub fn double_ladder_substitution(g: &Graph, f: &OrientationMap) -> Result<(Graph, SubstitutionMap)> {
    vertex_substitution(g, f, GadgetKind::DoubleLadder)
}

/// U-tree substitution: horizontal edges link `x`/`z`, vertical ones `y`/`w`.
pub fn utree_substitution(g: &Graph, f: &OrientationMap) -> Result<(Graph, SubstitutionMap)> {
    vertex_substitution(g, f, GadgetKind::UTree)
}

fn vertex_substitution(g: &Graph, f: &OrientationMap, kind: GadgetKind) -> Result<(Graph, SubstitutionMap)> {
    check_degrees(g, 4)?;
    f.check_against(g, true)?;
    let gadget = Gadget::catalog(kind);
    let assignment = assign_by_orientation(g, f, gadget, false)?;
    build(g, gadget, &assignment, Some(f), false)
}

/// Three-plug substitution for graphs of maximum degree 3. A copy whose
/// vertex has two vertical edges is used turned by a quarter. Each active
/// interconnector receives a pendant plug leaf so that trees stay
/// {1,3}-trees.
pub fn three_plug_substitution(g: &Graph, f: &OrientationMap) -> Result<(Graph, SubstitutionMap)> {
    check_degrees(g, 3)?;
    f.check_against(g, true)?;
    let gadget = Gadget::catalog(GadgetKind::ThreePlug);
    let assignment = assign_by_orientation(g, f, gadget, true)?;
    build(g, gadget, &assignment, Some(f), true)
}

/// Windmill substitution with interconnectors taken in catalog order.
pub fn windmill_substitution(g: &Graph) -> Result<(Graph, SubstitutionMap)> {
    windmill_substitution_with(g, |_, k| (0..k).collect())
}

/// Windmill substitution where `choose(v, k)` returns, for a vertex with `k`
/// edges (in ascending neighbour order), the catalog indices of the
/// interconnectors they take.
pub fn windmill_substitution_with(
    g: &Graph,
    mut choose: impl FnMut(VertexId, usize) -> Vec<usize>,
) -> Result<(Graph, SubstitutionMap)> {
    check_degrees(g, 4)?;
    let gadget = Gadget::catalog(GadgetKind::Windmill);
    let mut assignment = Assignment::new();
    for v in g.vertices() {
        let edges: Vec<Edge> = g.neighbors(v).map(|w| Edge::new(v, w)).collect();
        let picks = choose(v, edges.len());
        let mut seen = [false; 4];
        if picks.len() != edges.len() || picks.iter().any(|&i| i >= 4 || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::Gadget(format!(
                "vertex {v}: interconnector choice {picks:?} is not {} distinct indices below 4",
                edges.len()
            )));
        }
        let labels = edges
            .into_iter()
            .zip(picks)
            .map(|(e, i)| (e, gadget.interconnectors[i].label.clone()))
            .collect();
        assignment.insert(v, (false, labels));
    }
    build(g, gadget, &assignment, None, false)
}

/// Windmill substitution driven by an embedding `e` of `g`: each edge takes
/// the interconnector whose arm points towards the neighbour, and every copy
/// is drawn as in the catalog around five times its vertex's point.
pub fn windmill_transport(g: &Graph, e: &Embedding) -> Result<(Graph, SubstitutionMap, Embedding)> {
    let gadget = Gadget::catalog(GadgetKind::Windmill);
    let centre = gadget.embedding.get(0).expect("catalog centre is placed");
    let arm = |d: [i64; 2]| -> Option<usize> {
        gadget.interconnectors.iter().position(|i| {
            let p = gadget.embedding.get(i.id).expect("catalog interconnector is placed");
            [p[0] - centre[0], p[1] - centre[1]] == [2 * d[0], 2 * d[1]]
        })
    };
    let at = |v: VertexId| e.get(v).ok_or_else(|| Error::InvalidEmbedding(format!("vertex {v} is not placed")));
    let mut picks = BTreeMap::new();
    for v in g.vertices() {
        let p = at(v)?;
        let mut mine = Vec::new();
        for w in g.neighbors(v) {
            let q = at(w)?;
            let d = [q[0] - p[0], q[1] - p[1]];
            mine.push(arm(d).ok_or_else(|| {
                Error::InvalidEmbedding(format!("edge {v}-{w} is not a unit step in the plane"))
            })?);
        }
        picks.insert(v, mine);
    }
    let (w, m) = windmill_substitution_with(g, |v, _| picks[&v].clone())?;
    let mut points = BTreeMap::new();
    for (v, copy) in &m.vertex_to_copy {
        let p = at(*v)?;
        for (&i, c) in &gadget.embedding.points {
            points.insert(copy.offset + i, [5 * p[0] + c[0] - centre[0], 5 * p[1] + c[1] - centre[1], 0]);
        }
    }
    Ok((w, m, Embedding::from_points(Dim::Two, points)))
}

/// Orientation of a vertex substitution's output: internal edges as in the
/// gadget's known embedding (exchanged on turned copies), external edges as
/// the original edge, plugs across it.
pub fn compose_orientation(gadget_orientation: &OrientationMap, f: &OrientationMap, m: &SubstitutionMap) -> Result<OrientationMap> {
    let mut out = OrientationMap::new();
    for copy in m.vertex_to_copy.values() {
        for (e, a) in gadget_orientation.iter() {
            if a == Axis::Undefined {
                return Err(Error::IncompleteOrientation(e.0, e.1));
            }
            let a = if copy.rotated { a.flip() } else { a };
            out.set(copy.offset + e.0, copy.offset + e.1, a);
        }
    }
    for (e, link) in &m.edge_to_link {
        let Link::External { edge } = link else {
            return Err(Error::Gadget(format!(
                "edge {}-{} is linked by a square, not an external edge",
                e.0, e.1
            )));
        };
        out.set(edge[0], edge[1], label_of(f, *e)?);
    }
    for (e, a) in &m.plugs {
        if *a == Axis::Undefined {
            return Err(Error::IncompleteOrientation(e.0, e.1));
        }
        out.set(e.0, e.1, *a);
    }
    Ok(out)
}

/// The composed orientation of a U-tree substitution: `f_u` on internal
/// edges, `f_s` on external ones.
pub fn compose_orientation_utree(f_u: &OrientationMap, f_s: &OrientationMap, m: &SubstitutionMap) -> Result<OrientationMap> {
    compose_orientation(f_u, f_s, m)
}

/// Gives one leaf of the first three-plug copy a new neighbour, so that a
/// {1,3}-tree becomes strictly binary. Returns the new graph and new edge.
pub fn strictify(t: &Graph, m: &SubstitutionMap) -> Result<(Graph, Edge)> {
    if m.kind != GadgetKind::ThreePlug {
        return Err(Error::Gadget(format!("strictify needs a three-plug substitution, got {}", m.kind)));
    }
    let gadget = Gadget::catalog(GadgetKind::ThreePlug);
    let leaf = gadget
        .strictify_leaf
        .ok_or_else(|| Error::Gadget("no eligible leaf recorded in the three-plug catalog entry".into()))?;
    let copy = m
        .vertex_to_copy
        .values()
        .find(|c| c.index == 0)
        .ok_or_else(|| Error::Gadget("substitution has no copies".into()))?;
    let v = copy.offset + leaf;
    if t.degree(v) != 1 {
        return Err(Error::Gadget(format!("vertex {v} is not a leaf")));
    }
    let mut out = t.clone();
    let w = out.push_vertex();
    out.add_edge(v, w)?;
    Ok((out, Edge::new(v, w)))
}

/// Axis of the edge [`strictify`] adds, given the map it was built from.
pub fn strictify_axis(m: &SubstitutionMap) -> Axis {
    let gadget = Gadget::catalog(GadgetKind::ThreePlug);
    let leaf = gadget.strictify_leaf.unwrap_or_default();
    let parent = gadget.graph.neighbors(leaf).next().unwrap_or_default();
    let (a, b) = (gadget.embedding.get(leaf), gadget.embedding.get(parent));
    let along = match (a, b) {
        (Some(a), Some(b)) if a[0] != b[0] => Axis::Horizontal,
        _ => Axis::Vertical,
    };
    let rotated = m.vertex_to_copy.values().any(|c| c.index == 0 && c.rotated);
    if rotated {
        along.flip()
    } else {
        along
    }
}
