use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::lattice::{manhattan, sub, symmetry_group, Dim, Point, Symmetry};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Placement of vertices on lattice points. 2d embeddings keep `z = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub dim: Dim,
    pub points: BTreeMap<VertexId, Point>,
}

impl Embedding {
    pub fn new(dim: Dim) -> Self {
        Embedding {
            dim,
            points: BTreeMap::new(),
        }
    }

    pub fn from_points(dim: Dim, points: impl IntoIterator<Item = (VertexId, Point)>) -> Self {
        Embedding {
            dim,
            points: points.into_iter().collect(),
        }
    }

    pub fn get(&self, v: VertexId) -> Option<Point> {
        self.points.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Inclusive `(min, max)` corners.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let mut it = self.points.values();
        let first = *it.next()?;
        let (mut lo, mut hi) = (first, first);
        for p in it {
            for i in 0..3 {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        Some((lo, hi))
    }

    /// Number of lattice points spanned on each axis (`[w, h, d]`).
    pub fn extents(&self) -> [i64; 3] {
        match self.bounding_box() {
            Some((lo, hi)) => [hi[0] - lo[0] + 1, hi[1] - lo[1] + 1, hi[2] - lo[2] + 1],
            None => [0, 0, 0],
        }
    }

    pub fn transformed(&self, g: &Symmetry) -> Embedding {
        Embedding {
            dim: self.dim,
            points: self.points.iter().map(|(&v, &p)| (v, g.apply(p))).collect(),
        }
    }

    pub fn translated(&self, by: Point) -> Embedding {
        Embedding {
            dim: self.dim,
            points: self
                .points
                .iter()
                .map(|(&v, &p)| (v, [p[0] + by[0], p[1] + by[1], p[2] + by[2]]))
                .collect(),
        }
    }

    /// Shifted so every axis starts at 0.
    pub fn normalized(&self) -> Embedding {
        match self.bounding_box() {
            Some((lo, _)) => self.translated([-lo[0], -lo[1], -lo[2]]),
            None => self.clone(),
        }
    }

    /// Same placement in 3d with `z = 0`.
    pub fn lifted(&self) -> Embedding {
        Embedding {
            dim: Dim::Three,
            points: self.points.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let points: BTreeMap<String, Vec<i64>> = self
            .points
            .iter()
            .map(|(v, p)| (v.to_string(), p[..self.dim.get()].to_vec()))
            .collect();
        serde_json::to_value(EmbeddingJson {
            dim: self.dim.get(),
            points,
        })
        .expect("embedding serializes")
    }

    pub fn from_json(text: &str) -> Result<Embedding> {
        let doc: EmbeddingJson = serde_json::from_str(text)?;
        let dim = Dim::from_usize(doc.dim)?;
        let mut points = BTreeMap::new();
        for (k, coords) in doc.points {
            let v: VertexId = k
                .parse()
                .map_err(|_| Error::InvalidEmbedding(format!("bad vertex key {k:?}")))?;
            if coords.len() != dim.get() {
                return Err(Error::InvalidEmbedding(format!(
                    "vertex {v} has {} coordinates, expected {}",
                    coords.len(),
                    dim.get()
                )));
            }
            let mut p = [0; 3];
            p[..coords.len()].copy_from_slice(&coords);
            points.insert(v, p);
        }
        Ok(Embedding { dim, points })
    }
}

#[derive(Serialize, Deserialize)]
struct EmbeddingJson {
    dim: usize,
    points: BTreeMap<String, Vec<i64>>,
}

/// `Ok(true)` iff the placement is injective and every edge is a unit segment.
/// Errors if the placement and the vertex set differ.
pub fn validate_embedding(g: &Graph, e: &Embedding) -> Result<bool> {
    for v in g.vertices() {
        if !e.points.contains_key(&v) {
            return Err(Error::InvalidEmbedding(format!("vertex {v} is not placed")));
        }
    }
    if let Some(v) = e.points.keys().find(|&&v| !g.contains_vertex(v)) {
        return Err(Error::InvalidEmbedding(format!("vertex {v} is not in the graph")));
    }
    if e.dim == Dim::Two && e.points.values().any(|p| p[2] != 0) {
        return Ok(false);
    }
    let mut seen = HashSet::with_capacity(e.len());
    if !e.points.values().all(|p| seen.insert(*p)) {
        return Ok(false);
    }
    Ok(g
        .edges()
        .all(|ed| manhattan(e.points[&ed.0], e.points[&ed.1]) == 1))
}

/// A drawing with vertex names forgotten, normalized over rotation,
/// reflection and translation. Ordered lexicographically by points, then
/// segments.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalDrawing {
    pub dim: Dim,
    pub points: Vec<Point>,
    pub segments: Vec<(Point, Point)>,
}

impl CanonicalDrawing {
    pub fn extents(&self) -> [i64; 3] {
        let mut hi = [0i64; 3];
        for p in &self.points {
            for i in 0..3 {
                hi[i] = hi[i].max(p[i]);
            }
        }
        if self.points.is_empty() {
            [0, 0, 0]
        } else {
            [hi[0] + 1, hi[1] + 1, hi[2] + 1]
        }
    }

    /// Reads the drawing back as a graph on `0..points.len()` with its embedding.
    pub fn to_graph_embedding(&self) -> (Graph, Embedding) {
        let index: BTreeMap<Point, usize> =
            self.points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut g = Graph::with_vertices(self.points.len());
        for (a, b) in &self.segments {
            g.add_edge(index[a], index[b]).expect("segments are distinct");
        }
        let e = Embedding::from_points(self.dim, self.points.iter().copied().enumerate());
        (g, e)
    }
}

fn drawing_under(g: &Graph, e: &Embedding, sym: &Symmetry) -> CanonicalDrawing {
    let moved: BTreeMap<VertexId, Point> =
        e.points.iter().map(|(&v, &p)| (v, sym.apply(p))).collect();
    let mut lo = [i64::MAX; 3];
    for p in moved.values() {
        for i in 0..3 {
            lo[i] = lo[i].min(p[i]);
        }
    }
    let norm = |p: Point| sub(p, lo);
    let mut points: Vec<Point> = moved.values().map(|&p| norm(p)).collect();
    points.sort_unstable();
    let mut segments: Vec<(Point, Point)> = g
        .edges()
        .map(|ed| {
            let (a, b) = (norm(moved[&ed.0]), norm(moved[&ed.1]));
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    segments.sort_unstable();
    CanonicalDrawing {
        dim: e.dim,
        points,
        segments,
    }
}

/// Least drawing over the lattice symmetry group.
pub fn canonicalize(g: &Graph, e: &Embedding) -> Result<CanonicalDrawing> {
    if !validate_embedding(g, e)? {
        return Err(Error::InvalidEmbedding("not a unit-length embedding".into()));
    }
    Ok(canonical_unchecked(g, e))
}

pub(crate) fn canonical_unchecked(g: &Graph, e: &Embedding) -> CanonicalDrawing {
    if e.is_empty() {
        return CanonicalDrawing {
            dim: e.dim,
            points: vec![],
            segments: vec![],
        };
    }
    symmetry_group(e.dim)
        .iter()
        .map(|s| drawing_under(g, e, s))
        .min()
        .expect("group is non-empty")
}

/// Least vertex-labelled normal form: vertices keep their names, so two
/// embeddings agree iff a lattice symmetry maps one onto the other vertex by
/// vertex.
pub fn canonical_labeled(e: &Embedding) -> Vec<Point> {
    symmetry_group(e.dim)
        .iter()
        .map(|s| e.transformed(s).normalized().points.into_values().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Set of occupied points of an embedding.
pub fn occupied(e: &Embedding) -> BTreeSet<Point> {
    e.points.values().copied().collect()
}
