//! Per-edge horizontal/vertical labels.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axis {
    Horizontal,
    Vertical,
    Undefined,
}

impl Axis {
    /// Numeric code: 0 horizontal, 1 vertical, -1 undefined.
    pub fn code(self) -> i8 {
        match self {
            Axis::Horizontal => 0,
            Axis::Vertical => 1,
            Axis::Undefined => -1,
        }
    }

    pub fn flip(self) -> Axis {
        match self {
            Axis::Horizontal => Axis::Vertical,
            Axis::Vertical => Axis::Horizontal,
            Axis::Undefined => Axis::Undefined,
        }
    }

    /// Lattice axis index (0 = x, 1 = y).
    pub fn index(self) -> Option<usize> {
        match self {
            Axis::Horizontal => Some(0),
            Axis::Vertical => Some(1),
            Axis::Undefined => None,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Horizontal => "H",
            Axis::Vertical => "V",
            Axis::Undefined => "?",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrientationMap {
    labels: BTreeMap<Edge, Axis>,
}

impl OrientationMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every edge of `g` labelled `Undefined`.
    pub fn undefined_for(g: &Graph) -> Self {
        OrientationMap {
            labels: g.edges().map(|e| (e, Axis::Undefined)).collect(),
        }
    }

    pub fn set(&mut self, u: VertexId, v: VertexId, axis: Axis) {
        self.labels.insert(Edge::new(u, v), axis);
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> Option<Axis> {
        self.labels.get(&Edge::new(u, v)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, Axis)> + '_ {
        self.labels.iter().map(|(&e, &a)| (e, a))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.labels.values().all(|&a| a != Axis::Undefined)
    }

    /// Checks that the domain is a subset of E(g) and, if `complete`, that
    /// every edge of `g` carries a defined label.
    pub fn check_against(&self, g: &Graph, complete: bool) -> Result<()> {
        for e in self.labels.keys() {
            if !g.has_edge(e.0, e.1) {
                return Err(Error::OrientationForeignEdge(e.0, e.1));
            }
        }
        if complete {
            for e in g.edges() {
                match self.labels.get(&e) {
                    Some(Axis::Horizontal | Axis::Vertical) => {}
                    _ => return Err(Error::IncompleteOrientation(e.0, e.1)),
                }
            }
        }
        Ok(())
    }

    /// Lines `u v H|V` in edge order. Undefined labels are written as `?`.
    pub fn to_text(&self) -> String {
        self.labels
            .iter()
            .map(|(e, a)| format!("{} {} {}\n", e.0, e.1, a))
            .collect()
    }

    pub fn parse(text: &str) -> Result<OrientationMap> {
        let mut map = OrientationMap::new();
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = t.split_whitespace().collect();
            let err = |m: &str| Error::Parse {
                line: i + 1,
                column: 1,
                message: m.to_string(),
            };
            if f.len() != 3 {
                return Err(err("expected `u v H|V|?`"));
            }
            let u: VertexId = f[0].parse().map_err(|_| err("bad vertex id"))?;
            let v: VertexId = f[1].parse().map_err(|_| err("bad vertex id"))?;
            let a = match f[2] {
                "H" | "h" | "0" => Axis::Horizontal,
                "V" | "v" | "1" => Axis::Vertical,
                "?" => Axis::Undefined,
                _ => return Err(err("label must be H, V or ?")),
            };
            if u == v {
                return Err(Error::Loop(u));
            }
            map.set(u, v, a);
        }
        Ok(map)
    }
}

impl FromIterator<(Edge, Axis)> for OrientationMap {
    fn from_iter<T: IntoIterator<Item = (Edge, Axis)>>(iter: T) -> Self {
        OrientationMap {
            labels: iter.into_iter().collect(),
        }
    }
}
