//! Gadget catalog entries, loaded from the JSON files under `data/`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::embed::{Dim, Embedding};
use crate::error::{Error, Result};
use crate::graph::{DegreeSet, Graph, VertexId};
use crate::orientation::{Axis, OrientationMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetKind {
    DoubleLadder,
    Square,
    ThreePlug,
    UTree,
    Windmill,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 5] = [
        GadgetKind::DoubleLadder,
        GadgetKind::Square,
        GadgetKind::ThreePlug,
        GadgetKind::UTree,
        GadgetKind::Windmill,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::DoubleLadder => "double-ladder",
            GadgetKind::Square => "square",
            GadgetKind::ThreePlug => "three-plug",
            GadgetKind::UTree => "u-tree",
            GadgetKind::Windmill => "windmill",
        }
    }

    pub fn parse(name: &str) -> Result<GadgetKind> {
        GadgetKind::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::Gadget(format!("unknown gadget kind {name:?}")))
    }

    fn source(self) -> &'static str {
        match self {
            GadgetKind::DoubleLadder => include_str!("../../data/double_ladder.json"),
            GadgetKind::Square => include_str!("../../data/square.json"),
            GadgetKind::ThreePlug => include_str!("../../data/three_plug.json"),
            GadgetKind::UTree => include_str!("../../data/utree.json"),
            GadgetKind::Windmill => include_str!("../../data/windmill.json"),
        }
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the catalog properties are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMode {
    /// Over all embeddings.
    Free,
    /// Over the embeddings that respect the orientation read off the known
    /// embedding, which is what a substitution composes.
    Oriented,
    /// Over all embeddings, and every circular order of the interconnectors
    /// must be realizable.
    Robust,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interconnector {
    pub id: VertexId,
    pub label: String,
    /// Axis of the external edges this interconnector takes.
    pub axis: Axis,
    /// Position in the counterclockwise circular order, starting west.
    pub order: usize,
}

#[derive(Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<[VertexId; 2]>,
}

#[derive(Deserialize)]
struct GadgetDoc {
    kind: GadgetKind,
    graph: GraphDoc,
    interconnectors: Vec<InterconnectorDoc>,
    footprint: [usize; 2],
    #[serde(default)]
    pair_footprint: Option<[usize; 2]>,
    degree_set: Vec<usize>,
    mode: VerifyMode,
    #[serde(default)]
    drawings: Option<usize>,
    #[serde(default)]
    strictify_leaf: Option<VertexId>,
    embedding: Vec<[i64; 2]>,
}

#[derive(Deserialize)]
struct InterconnectorDoc {
    id: VertexId,
    label: String,
    axis: AxisDoc,
    order: usize,
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
enum AxisDoc {
    Horizontal,
    Vertical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub graph: Graph,
    pub interconnectors: Vec<Interconnector>,
    /// Bounding box in lattice points that every embedding must fit in.
    pub footprint: [usize; 2],
    /// Bounding box in lattice points two linked copies must occupy.
    pub pair_footprint: Option<[usize; 2]>,
    pub required_degree_set: DegreeSet,
    pub mode: VerifyMode,
    /// Expected number of distinct drawings, when declared.
    pub drawings: Option<usize>,
    /// Leaf beside a free lattice point, used by strictification.
    pub strictify_leaf: Option<VertexId>,
    /// The known embedding.
    pub embedding: Embedding,
}

impl Gadget {
    pub fn from_json(text: &str) -> Result<Gadget> {
        let doc: GadgetDoc = serde_json::from_str(text)?;
        let mut graph = Graph::with_vertices(doc.graph.n);
        for [u, v] in doc.graph.edges {
            if u >= doc.graph.n || v >= doc.graph.n {
                return Err(Error::UnknownVertex(u.max(v)));
            }
            graph.add_edge(u, v)?;
        }
        if doc.embedding.len() != doc.graph.n {
            return Err(Error::Gadget(format!(
                "{}: embedding lists {} points for {} vertices",
                doc.kind,
                doc.embedding.len(),
                doc.graph.n
            )));
        }
        let embedding = Embedding::from_points(
            Dim::Two,
            doc.embedding.iter().enumerate().map(|(v, p)| (v, [p[0], p[1], 0])),
        );
        let interconnectors = doc
            .interconnectors
            .into_iter()
            .map(|i| Interconnector {
                id: i.id,
                label: i.label,
                axis: match i.axis {
                    AxisDoc::Horizontal => Axis::Horizontal,
                    AxisDoc::Vertical => Axis::Vertical,
                },
                order: i.order,
            })
            .collect::<Vec<_>>();
        for i in &interconnectors {
            if i.id >= doc.graph.n {
                return Err(Error::Gadget(format!(
                    "{}: interconnector {} is not a vertex",
                    doc.kind, i.id
                )));
            }
        }
        Ok(Gadget {
            kind: doc.kind,
            graph,
            interconnectors,
            footprint: doc.footprint,
            pair_footprint: doc.pair_footprint,
            required_degree_set: DegreeSet::new(doc.degree_set)?,
            mode: doc.mode,
            drawings: doc.drawings,
            strictify_leaf: doc.strictify_leaf,
            embedding,
        })
    }

    /// The catalog entry for `kind`.
    pub fn catalog(kind: GadgetKind) -> &'static Gadget {
        static CATALOG: OnceLock<BTreeMap<GadgetKind, Gadget>> = OnceLock::new();
        let all = CATALOG.get_or_init(|| {
            GadgetKind::ALL
                .into_iter()
                .map(|k| {
                    let g = Gadget::from_json(k.source())
                        .unwrap_or_else(|e| panic!("catalog entry {k} is malformed: {e}"));
                    assert_eq!(g.kind, k, "catalog file for {k} declares another kind");
                    (k, g)
                })
                .collect()
        });
        &all[&kind]
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn interconnector(&self, label: &str) -> Option<&Interconnector> {
        self.interconnectors.iter().find(|i| i.label == label)
    }

    /// Interconnectors taking edges of `axis`, in catalog order.
    pub fn on_axis(&self, axis: Axis) -> Vec<&Interconnector> {
        self.interconnectors.iter().filter(|i| i.axis == axis).collect()
    }

    /// Horizontal/vertical labels of the known embedding.
    pub fn orientation(&self) -> OrientationMap {
        orientation_of(&self.graph, &self.embedding)
    }
}

/// Reads the axis of every edge off an embedding.
pub fn orientation_of(g: &Graph, e: &Embedding) -> OrientationMap {
    let mut o = OrientationMap::new();
    for edge in g.edges() {
        let (a, b) = (e.get(edge.0), e.get(edge.1));
        let axis = match (a, b) {
            (Some(a), Some(b)) if a[0] != b[0] => Axis::Horizontal,
            (Some(_), Some(_)) => Axis::Vertical,
            _ => Axis::Undefined,
        };
        o.set(edge.0, edge.1, axis);
    }
    o
}
