//! Square substitution: a unit square per vertex and per edge, the edge
//! square sharing opposite corners with the two vertex squares.

use std::collections::BTreeMap;

use super::catalog::GadgetKind;
use super::substitute::{ActiveEnd, CopyInfo, Link, SubstitutionMap};
use crate::embed::{Dim, Embedding, Point};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::orientation::{Axis, OrientationMap};

/// Corner indices within a vertex square.
const TL: usize = 0;
const TR: usize = 1;
const BR: usize = 2;
const BL: usize = 3;

/// Corner offsets from the top-left corner, in corner index order.
const CORNER: [Point; 4] = [[0, 0, 0], [1, 0, 0], [1, -1, 0], [0, -1, 0]];

/// Corner labels, matching the square catalog entry.
const LABEL: [&str; 4] = ["x", "y", "z", "w"];

/// Top-left corner of the square of a vertex drawn at `p`.
pub fn h(p: Point) -> Point {
    [2 * p[0] + 2 * p[1], -2 * p[0] + 2 * p[1], 0]
}

/// Inverse of [`h`], defined on its image.
pub fn h_inverse(q: Point) -> Option<Point> {
    let (a, b) = (q[0] - q[1], q[0] + q[1]);
    (a % 4 == 0 && b % 4 == 0).then_some([a / 4, b / 4, 0])
}

/// `(tail, head)` of an edge: the head lies one step along the positive
/// direction of the edge's axis from the tail.
type Directed = BTreeMap<Edge, (VertexId, VertexId, Axis)>;

/// Directs the edges of each axis along the paths (or cycles) they form.
fn direct_by_paths(g: &Graph, f: &OrientationMap) -> Result<Directed> {
    let mut out = Directed::new();
    for axis in [Axis::Horizontal, Axis::Vertical] {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for e in g.edges() {
            match f.get(e.0, e.1) {
                Some(Axis::Horizontal | Axis::Vertical) => {}
                _ => return Err(Error::IncompleteOrientation(e.0, e.1)),
            }
            if f.get(e.0, e.1) == Some(axis) {
                adj.entry(e.0).or_default().push(e.1);
                adj.entry(e.1).or_default().push(e.0);
            }
        }
        if let Some((v, n)) = adj.iter().find(|(_, n)| n.len() > 2) {
            return Err(Error::Gadget(format!(
                "vertex {v} has {} edges labelled {axis}",
                n.len()
            )));
        }
        // Path ends first, then whatever is left lies on cycles.
        let mut starts: Vec<VertexId> = adj.iter().filter(|(_, n)| n.len() == 1).map(|(&v, _)| v).collect();
        starts.extend(adj.keys().copied());
        for s in starts {
            let mut prev = None;
            let mut cur = s;
            loop {
                let next = adj[&cur]
                    .iter()
                    .copied()
                    .find(|&w| Some(w) != prev && !out.contains_key(&Edge::new(cur, w)));
                let Some(w) = next else { break };
                out.insert(Edge::new(cur, w), (cur, w, axis));
                prev = Some(cur);
                cur = w;
            }
        }
    }
    Ok(out)
}

fn build(g: &Graph, directed: &Directed) -> Result<(Graph, SubstitutionMap)> {
    let nv = g.vertex_count();
    let mut out = Graph::with_vertices(4 * nv + 2 * g.edge_count());
    let mut map = SubstitutionMap::new_square();
    for (index, v) in g.vertices().enumerate() {
        let o = 4 * index;
        for k in 0..4 {
            out.add_edge(o + k, o + (k + 1) % 4)?;
        }
        map.vertex_to_copy.insert(
            v,
            CopyInfo {
                index,
                offset: o,
                rotated: false,
            },
        );
    }
    for (j, e) in g.edges().enumerate() {
        let (tail, head, axis) = directed[&e];
        let (tc, hc) = match axis {
            Axis::Horizontal => (BR, TL),
            _ => (TR, BL),
        };
        let a = map.vertex_to_copy[&tail].offset + tc;
        let b = map.vertex_to_copy[&head].offset + hc;
        let n1 = 4 * nv + 2 * j;
        let n2 = n1 + 1;
        for (p, q) in [(a, n1), (n1, b), (b, n2), (n2, a)] {
            out.add_edge(p, q)?;
        }
        map.edge_to_link.insert(e, Link::EdgeSquare { square: [a, n1, b, n2] });
        map.active_interconnectors.insert(
            e,
            [
                ActiveEnd {
                    original: tail,
                    label: LABEL[tc].into(),
                    vertex: a,
                },
                ActiveEnd {
                    original: head,
                    label: LABEL[hc].into(),
                    vertex: b,
                },
            ],
        );
    }
    Ok((out, map))
}

/// Square substitution driven by an orientation: horizontal edges use the
/// top-left/bottom-right corner pair, vertical edges the other pair.
pub fn square_substitution(g: &Graph, f: &OrientationMap) -> Result<(Graph, SubstitutionMap)> {
    for v in g.vertices() {
        if g.degree(v) > 4 {
            return Err(Error::DegreeTooLarge {
                vertex: v,
                degree: g.degree(v),
                limit: 4,
            });
        }
    }
    f.check_against(g, true)?;
    build(g, &direct_by_paths(g, f)?)
}

/// Builds `Q(G)` with edges directed as in the embedding `e` of `g`, and
/// carries `e` over: the square of a vertex at `p` gets its top-left corner
/// at `h(p)`.
pub fn square_transport(g: &Graph, e: &Embedding) -> Result<(Graph, SubstitutionMap, Embedding)> {
    let mut directed = Directed::new();
    for edge in g.edges() {
        let (p, q) = match (e.get(edge.0), e.get(edge.1)) {
            (Some(p), Some(q)) => (p, q),
            _ => return Err(Error::InvalidEmbedding(format!("edge {}-{} is not placed", edge.0, edge.1))),
        };
        let d = [q[0] - p[0], q[1] - p[1]];
        let entry = match d {
            [1, 0] => (edge.0, edge.1, Axis::Horizontal),
            [-1, 0] => (edge.1, edge.0, Axis::Horizontal),
            [0, 1] => (edge.0, edge.1, Axis::Vertical),
            [0, -1] => (edge.1, edge.0, Axis::Vertical),
            _ => return Err(Error::InvalidEmbedding(format!("edge {}-{} is not a unit step", edge.0, edge.1))),
        };
        directed.insert(edge, entry);
    }
    let (q, map) = build(g, &directed)?;
    let mut points = BTreeMap::new();
    for (v, copy) in &map.vertex_to_copy {
        let top_left = h(e.get(*v).expect("checked above"));
        for (k, c) in CORNER.iter().enumerate() {
            points.insert(copy.offset + k, [top_left[0] + c[0], top_left[1] + c[1], 0]);
        }
    }
    for (edge, link) in &map.edge_to_link {
        let Link::EdgeSquare { square } = link else { unreachable!() };
        let (tail, _, axis) = directed[edge];
        let t = h(e.get(tail).expect("checked above"));
        // The edge square spans one cell diagonally away from the tail's
        // shared corner.
        let (n1, n2) = match axis {
            Axis::Horizontal => ([t[0] + 2, t[1] - 1, 0], [t[0] + 1, t[1] - 2, 0]),
            _ => ([t[0] + 2, t[1], 0], [t[0] + 1, t[1] + 1, 0]),
        };
        points.insert(square[1], n1);
        points.insert(square[3], n2);
    }
    Ok((q, map, Embedding::from_points(Dim::Two, points)))
}

/// The part of the orientation of a square substitution's output that every
/// drawing shares, up to isomorphism. Edge squares are labelled horizontal
/// from their tail corner on, and vertex squares horizontal from their top
/// side on, except the squares of vertices with edges on both axes: reversing
/// the direction chosen for one of their axes mirrors them along a diagonal,
/// which exchanges the labels of their sides, and which direction a drawing
/// realizes is not a function of the input orientation. Such a square is
/// still labelled when one of its axes carries exactly two leaves, since
/// swapping those leaves reverses that axis in any drawing.
pub fn square_orientation(q: &Graph, m: &SubstitutionMap) -> Result<OrientationMap> {
    let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
    for e in m.edge_to_link.keys() {
        *degree.entry(e.0).or_default() += 1;
        *degree.entry(e.1).or_default() += 1;
    }
    let mut along: BTreeMap<VertexId, [Vec<VertexId>; 2]> = BTreeMap::new();
    for ends in m.active_interconnectors.values() {
        for (i, end) in ends.iter().enumerate() {
            let k = LABEL.iter().position(|l| *l == end.label).ok_or_else(|| {
                Error::Gadget(format!("unknown square corner {:?}", end.label))
            })?;
            along.entry(end.original).or_default()[k % 2].push(ends[1 - i].original);
        }
    }
    let leaf_pair = |n: &Vec<VertexId>| n.len() == 2 && n.iter().all(|w| degree[w] == 1);
    let undetermined = |v: &VertexId| match along.get(v) {
        Some([hs, vs]) => !hs.is_empty() && !vs.is_empty() && !leaf_pair(hs) && !leaf_pair(vs),
        None => false,
    };
    let mut o = OrientationMap::undefined_for(q);
    for (v, copy) in &m.vertex_to_copy {
        if undetermined(v) {
            continue;
        }
        for k in 0..4 {
            let axis = if k % 2 == 0 { Axis::Horizontal } else { Axis::Vertical };
            o.set(copy.offset + k, copy.offset + (k + 1) % 4, axis);
        }
    }
    for link in m.edge_to_link.values() {
        let Link::EdgeSquare { square } = link else {
            return Err(Error::Gadget("square orientation needs edge squares".into()));
        };
        for k in 0..4 {
            let axis = if k % 2 == 0 { Axis::Horizontal } else { Axis::Vertical };
            o.set(square[k], square[(k + 1) % 4], axis);
        }
    }
    o.check_against(q, false)?;
    Ok(o)
}

impl SubstitutionMap {
    fn new_square() -> Self {
        SubstitutionMap {
            kind: GadgetKind::Square,
            gadget_vertices: 4,
            vertex_to_copy: BTreeMap::new(),
            edge_to_link: BTreeMap::new(),
            active_interconnectors: BTreeMap::new(),
            plugs: Vec::new(),
        }
    }
}
