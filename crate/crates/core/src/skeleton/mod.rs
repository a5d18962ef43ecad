//! Extended skeletons: the {1,2,4}-trees encoding NAE-3SAT formulas, their
//! consistent orientation, structural validation and assignment decoding.
//!
//! Layout of the intended drawing for `n` variables and `k` clauses: a
//! horizontal main cord on columns `0..=4n+4` at height 0. Columns 0 and
//! `4n+4` are pads carrying three leaves. Columns 1 and `4n+3` carry walls,
//! column `4i` the armature of variable `i`; every other main-cord vertex
//! carries a leaf above and below. Each wall and armature hangs two halves
//! from degree-2 connectors, one above and one below the main cord. A half is
//! a vertical cord of `k` clause rows plus a cap, every cord vertex carrying a
//! horizontal arm on each side; the cap also carries a leaf at its tip. In the
//! half of literal `l`, the arm of row `j` is a flag (an extra vertex between
//! the cord and the leaf) exactly when `l` does not occur in clause `j`. Walls
//! carry plain leaves only.
//!
//! Armatures sit four columns apart and walls three columns from their
//! neighbouring armature, so a gap holds at most one flag and the gaps next to
//! the walls hold none. A row of flags on one side of the main cord therefore
//! fits iff some half on that side has no flag in it, i.e. the clause has a
//! literal on that side. Reading "above" as true, the skeleton has a drawing
//! iff every clause has a true and a false literal.

mod orient;

pub use orient::{consistent_orientation, consistent_orientation_traced, Step};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::formula::{Assignment, Literal, NaeFormula};
use crate::graph::{Edge, Graph, VertexId};

/// The clause row a flag sits in and the literal whose absence it marks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagSource {
    /// 1-based variable index.
    pub variable: usize,
    pub positive: bool,
    /// 1-based clause index.
    pub clause: usize,
}

/// What a transversal cord stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "kebab-case")]
pub enum CordRole {
    Wall,
    Literal { variable: usize, positive: bool },
}

/// Where a transversal cord hangs from the main cord.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CordSource {
    #[serde(flatten)]
    pub role: CordRole,
    /// Main-cord vertex the cord hangs from.
    pub attachment: VertexId,
    /// Degree-2 vertex between the attachment and the cord.
    pub connector: VertexId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub flags: BTreeMap<Edge, FlagSource>,
    /// Parallel to `ExtendedSkeleton::transversal_cords`.
    pub cords: Vec<CordSource>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedSkeleton {
    pub formula: NaeFormula,
    pub graph: Graph,
    pub flags: BTreeSet<Edge>,
    /// The graph minus its flags.
    pub skeleton: Graph,
    pub main_cord: Vec<VertexId>,
    /// Each ordered from the connector outwards.
    pub transversal_cords: Vec<Vec<VertexId>>,
    pub provenance: Provenance,
}

struct Builder {
    g: Graph,
    flags: BTreeMap<Edge, FlagSource>,
    cords: Vec<Vec<VertexId>>,
    sources: Vec<CordSource>,
}

impl Builder {
    fn leaf(&mut self, v: VertexId) -> VertexId {
        let w = self.g.push_vertex();
        self.g.add_edge(v, w).expect("fresh vertex");
        w
    }

    /// Hangs a half from `attachment`; `flags[j]` names the source of the
    /// flag in row `j`, if any.
    fn half(&mut self, attachment: VertexId, role: CordRole, flags: &[Option<FlagSource>]) {
        let connector = self.leaf(attachment);
        let mut cord = Vec::with_capacity(flags.len() + 1);
        let mut prev = connector;
        for row in 0..=flags.len() {
            let t = self.leaf(prev);
            cord.push(t);
            self.leaf(t);
            match flags.get(row) {
                Some(Some(source)) => {
                    let elbow = self.leaf(t);
                    let tip = self.leaf(elbow);
                    self.flags.insert(Edge::new(elbow, tip), *source);
                }
                Some(None) => {
                    self.leaf(t);
                }
                None => {
                    self.leaf(t);
                    self.leaf(t);
                }
            }
            prev = t;
        }
        self.cords.push(cord);
        self.sources.push(CordSource {
            role,
            attachment,
            connector,
        });
    }
}

/// Column of the armature of variable `i` (1-based) on the main cord.
fn armature_column(i: usize) -> usize {
    4 * i
}

/// Builds `S_phi`. Main-cord vertex ids equal their column.
pub fn build_extended_skeleton(phi: &NaeFormula) -> ExtendedSkeleton {
    let n = phi.variable_count();
    let k = phi.clauses().len();
    let len = 4 * n + 5;
    let mut b = Builder {
        g: Graph::with_vertices(len),
        flags: BTreeMap::new(),
        cords: Vec::new(),
        sources: Vec::new(),
    };
    for x in 1..len {
        b.g.add_edge(x - 1, x).expect("fresh edge");
    }
    let walls = [1, len - 2];
    let attached: BTreeSet<usize> = walls.into_iter().chain((1..=n).map(armature_column)).collect();
    for x in 0..len {
        let leaves = match x {
            _ if x == 0 || x == len - 1 => 3,
            _ if attached.contains(&x) => 0,
            _ => 2,
        };
        for _ in 0..leaves {
            b.leaf(x);
        }
    }
    let plain = vec![None; k];
    b.half(walls[0], CordRole::Wall, &plain);
    b.half(walls[0], CordRole::Wall, &plain);
    for variable in 1..=n {
        for positive in [true, false] {
            let lit = Literal(if positive { variable as i32 } else { -(variable as i32) });
            let flags: Vec<Option<FlagSource>> = phi
                .clauses()
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    (!c.contains(&lit)).then_some(FlagSource {
                        variable,
                        positive,
                        clause: j + 1,
                    })
                })
                .collect();
            b.half(armature_column(variable), CordRole::Literal { variable, positive }, &flags);
        }
    }
    b.half(walls[1], CordRole::Wall, &plain);
    b.half(walls[1], CordRole::Wall, &plain);

    let mut skeleton = b.g.clone();
    for e in b.flags.keys() {
        skeleton.remove_edge(e.0, e.1);
    }
    ExtendedSkeleton {
        formula: phi.clone(),
        graph: b.g,
        flags: b.flags.keys().copied().collect(),
        skeleton,
        main_cord: (0..len).collect(),
        transversal_cords: b.cords,
        provenance: Provenance {
            flags: b.flags,
            cords: b.sources,
        },
    }
}

/// Number of flags `build_extended_skeleton` produces: one per (literal,
/// clause) pair with the literal absent from the clause.
pub fn expected_flag_count(phi: &NaeFormula) -> usize {
    let n = phi.variable_count();
    phi.clauses()
        .iter()
        .map(|c| {
            let distinct: BTreeSet<Literal> = c.iter().copied().collect();
            2 * n - distinct.len()
        })
        .sum()
}

/// Edges `uv` with `d(u) = 1` and `d(v) = 2`.
pub(crate) fn flag_edges(g: &Graph) -> BTreeSet<Edge> {
    g.edges()
        .filter(|e| {
            let (a, b) = (g.degree(e.0), g.degree(e.1));
            (a, b) == (1, 2) || (a, b) == (2, 1)
        })
        .collect()
}

pub(crate) fn without_edges(g: &Graph, remove: &BTreeSet<Edge>) -> Graph {
    let mut z = g.clone();
    for e in remove {
        z.remove_edge(e.0, e.1);
    }
    z
}

/// Maximal paths of degree-4 vertices in `z`, each listed from its smaller
/// end; errors if the degree-4 vertices induce anything but paths.
pub(crate) fn spinal_paths(z: &Graph) -> Result<Vec<Vec<VertexId>>> {
    let four: BTreeSet<VertexId> = z.vertices().filter(|&v| z.degree(v) == 4).collect();
    let inner = |v: VertexId| z.neighbors(v).filter(|w| four.contains(w)).collect::<Vec<_>>();
    let mut seen = BTreeSet::new();
    let mut paths = Vec::new();
    for &s in &four {
        if seen.contains(&s) || inner(s).len() > 1 {
            continue;
        }
        let mut path = vec![s];
        seen.insert(s);
        let mut cur = s;
        while let Some(next) = inner(cur).into_iter().find(|w| !seen.contains(w)) {
            if inner(next).len() > 2 {
                return Err(Error::Skeleton(format!("vertex {next} branches inside a spinal cord")));
            }
            seen.insert(next);
            path.push(next);
            cur = next;
        }
        paths.push(path);
    }
    if let Some(v) = four.iter().find(|v| !seen.contains(v)) {
        return Err(Error::Skeleton(format!("vertex {v} lies on a cycle or branch of degree-4 vertices")));
    }
    Ok(paths)
}

/// Whether some vertex of `path` has two degree-2 neighbours in `z`.
pub(crate) fn holds_connectors(z: &Graph, path: &[VertexId]) -> bool {
    path.iter()
        .any(|&v| z.neighbors(v).filter(|&w| z.degree(w) == 2).count() >= 2)
}

fn same_path(a: &[VertexId], b: &[VertexId]) -> bool {
    a == b || a.iter().rev().eq(b.iter())
}

/// Every way the annotations of `s` disagree with its raw graph. Empty iff
/// the skeleton is well formed.
pub fn validate_skeleton_structure(s: &ExtendedSkeleton) -> Vec<String> {
    let mut out = Vec::new();
    let g = &s.graph;
    if !g.is_tree() {
        out.push("graph is not a tree".to_string());
    }
    for v in g.vertices() {
        if ![1, 2, 4].contains(&g.degree(v)) {
            out.push(format!("vertex {v} has degree {}", g.degree(v)));
        }
    }
    let flags = flag_edges(g);
    if flags != s.flags {
        out.push(format!(
            "flag set differs from the degree-(1,2) edges: {} annotated, {} found",
            s.flags.len(),
            flags.len()
        ));
    }
    let z = without_edges(g, &flags);
    let annotated: BTreeSet<Edge> = s.skeleton.edges().collect();
    let expected: BTreeSet<Edge> = z.edges().collect();
    if annotated != expected {
        out.push("skeleton edges are not the graph minus its flags".to_string());
    }
    for e in g.edges() {
        if s.flags.contains(&e) == annotated.contains(&e) {
            out.push(format!("edge {e} must be a flag xor a skeleton edge"));
        }
    }
    let keys: BTreeSet<Edge> = s.provenance.flags.keys().copied().collect();
    if keys != s.flags {
        out.push("flag provenance does not cover exactly the flags".to_string());
    }
    if s.provenance.cords.len() != s.transversal_cords.len() {
        out.push("cord provenance does not match the transversal cords".to_string());
    }
    match spinal_paths(&z) {
        Err(e) => out.push(e.to_string()),
        Ok(paths) if paths.is_empty() => out.push("no path of degree-4 vertices".to_string()),
        Ok(paths) => {
            let mains: Vec<&Vec<VertexId>> = paths.iter().filter(|p| holds_connectors(&z, p)).collect();
            match mains.as_slice() {
                [m] => {
                    if !same_path(m, &s.main_cord) {
                        out.push("annotated main cord is not the main spinal cord".to_string());
                    }
                }
                _ => out.push(format!("{} candidate main cords, expected exactly one", mains.len())),
            }
            let rest: Vec<&Vec<VertexId>> = paths.iter().filter(|p| !holds_connectors(&z, p)).collect();
            let matched = rest.len() == s.transversal_cords.len()
                && s
                    .transversal_cords
                    .iter()
                    .all(|t| rest.iter().any(|p| same_path(p, t)));
            if !matched {
                out.push("annotated transversal cords differ from the spinal paths".to_string());
            }
        }
    }
    out
}

/// Reads variable `i` as true when the half of literal `x_i` lies on the
/// left-hand side of the main cord, walking it in annotated order.
pub fn decode_assignment(s: &ExtendedSkeleton, e: &Embedding) -> Result<Assignment> {
    let at = |v: VertexId| {
        e.get(v)
            .ok_or_else(|| Error::InvalidEmbedding(format!("vertex {v} is not placed")))
    };
    let index: BTreeMap<VertexId, usize> = s.main_cord.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let side = |src: &CordSource| -> Result<i64> {
        let i = *index
            .get(&src.attachment)
            .ok_or_else(|| Error::InvalidEmbedding(format!("{} is not on the main cord", src.attachment)))?;
        let (a, b) = if i + 1 < s.main_cord.len() {
            (s.main_cord[i], s.main_cord[i + 1])
        } else {
            (s.main_cord[i - 1], s.main_cord[i])
        };
        let (pa, pb) = (at(a)?, at(b)?);
        let (p, c) = (at(src.attachment)?, at(src.connector)?);
        let d = [pb[0] - pa[0], pb[1] - pa[1]];
        let off = [c[0] - p[0], c[1] - p[1]];
        Ok(d[0] * off[1] - d[1] * off[0])
    };
    let n = s.formula.variable_count();
    let mut values = vec![None; n];
    for src in &s.provenance.cords {
        if let CordRole::Literal { variable, positive } = src.role {
            let up = match side(src)? {
                0 => {
                    return Err(Error::InvalidEmbedding(format!(
                        "half of variable {variable} is collinear with the main cord"
                    )))
                }
                x => x > 0,
            };
            let value = up == positive;
            match values[variable - 1] {
                None => values[variable - 1] = Some(value),
                Some(v) if v != value => {
                    return Err(Error::InvalidEmbedding(format!(
                        "both halves of variable {variable} lie on the same side"
                    )))
                }
                Some(_) => {}
            }
        }
    }
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::InvalidEmbedding(format!("no half for variable {}", i + 1))))
        .collect::<Result<Vec<bool>>>()
        .map(Assignment::new)
}

#[derive(Serialize)]
struct Sidecar<'a> {
    flags: Vec<[VertexId; 2]>,
    main_cord: &'a [VertexId],
    transversal_cords: &'a [Vec<VertexId>],
    provenance: SidecarProvenance<'a>,
}

#[derive(Serialize)]
struct SidecarProvenance<'a> {
    flags: Vec<SidecarFlag>,
    cords: &'a [CordSource],
}

#[derive(Serialize)]
struct SidecarFlag {
    edge: [VertexId; 2],
    #[serde(flatten)]
    source: FlagSource,
}

impl ExtendedSkeleton {
    /// Sidecar JSON with flags, cords and provenance.
    pub fn to_json(&self) -> serde_json::Value {
        let sidecar = Sidecar {
            flags: self.flags.iter().map(|e| [e.0, e.1]).collect(),
            main_cord: &self.main_cord,
            transversal_cords: &self.transversal_cords,
            provenance: SidecarProvenance {
                flags: self
                    .provenance
                    .flags
                    .iter()
                    .map(|(e, s)| SidecarFlag {
                        edge: [e.0, e.1],
                        source: *s,
                    })
                    .collect(),
                cords: &self.provenance.cords,
            },
        };
        serde_json::to_value(sidecar).expect("sidecar serializes")
    }
}
