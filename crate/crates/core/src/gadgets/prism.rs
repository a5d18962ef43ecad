//! The prism of a graph, optionally with pendant leaves.

use crate::error::{Error, Result};
use crate::graph::{degree_set, DegreeSet, Graph};

/// Vertices `V x {0,1}`: the `k`-th vertex of `g` (ascending id) becomes
/// `k` in layer 0 and `n + k` in layer 1. Layers are copies of `g` joined by
/// the matching `(v,0)(v,1)`.
pub fn prism(g: &Graph) -> Graph {
    let (d, _) = g.relabel_dense();
    let n = d.vertex_count();
    let mut out = Graph::with_vertices(2 * n);
    for e in d.edges() {
        out.add_edge(e.0, e.1).expect("fresh edge");
        out.add_edge(n + e.0, n + e.1).expect("fresh edge");
    }
    for v in 0..n {
        out.add_edge(v, n + v).expect("fresh edge");
    }
    out
}

/// The prism plus one pendant leaf on each prism vertex whose original
/// degree lies in `d2`.
pub fn hairy_prism(g: &Graph, d2: &DegreeSet) -> Result<Graph> {
    if !d2.is_empty() {
        let own = degree_set(g)?;
        if !d2.is_subset(&own) {
            return Err(Error::InvalidDegreeSet(format!("{d2} is not a subset of {own}")));
        }
    }
    let (d, _) = g.relabel_dense();
    let n = d.vertex_count();
    let mut out = prism(&d);
    for v in 0..n {
        if d2.contains(d.degree(v)) {
            for layer in 0..2 {
                let leaf = out.push_vertex();
                out.add_edge(layer * n + v, leaf)?;
            }
        }
    }
    Ok(out)
}
