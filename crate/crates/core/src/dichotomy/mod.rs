//! Complexity classification by degree set and the polynomial recognizers.

mod grid;
mod table;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use grid::{is_grid, is_grid_3d, GridShape};
pub use table::{
    classify, render_planar_table, render_spatial_table, spatial_cell, AppliesTo, Cell,
    Complexity, DichotomyClass, Source, PLANAR_TABLE, SPATIAL_COLS, SPATIAL_ROWS, SPATIAL_TABLE,
};

use crate::embed::{solve, validate_embedding, Dim, Embedding, Point, SolveConstraints, SolveOutcome};
use crate::error::{Error, Result};
use crate::graph::{connected_components, degree_set, DegreeSet, Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    BudgetExceeded,
}

impl Verdict {
    /// Process exit code used by the command line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::BudgetExceeded => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Trivial,
    PathOrCycle,
    MinDegreeThree,
    GridWithLeaves,
    MinDegreeFour3d,
    GridWithLeaves3d,
    ExactSearch,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Trivial => "trivial",
            Method::PathOrCycle => "path-or-cycle",
            Method::MinDegreeThree => "min-degree-three",
            Method::GridWithLeaves => "grid-with-leaves",
            Method::MinDegreeFour3d => "min-degree-four-3d",
            Method::GridWithLeaves3d => "grid-with-leaves-3d",
            Method::ExactSearch => "exact-search",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognitionResult {
    pub verdict: Verdict,
    /// Methods used, one per distinct recognizer over the components.
    pub methods: Vec<Method>,
    pub witness: Option<Embedding>,
    pub classification: Option<DichotomyClass>,
}

impl RecognitionResult {
    fn single(verdict: Verdict, method: Method, witness: Option<Embedding>) -> Self {
        RecognitionResult {
            verdict,
            methods: vec![method],
            witness,
            classification: None,
        }
    }

    fn yes(method: Method, witness: Embedding) -> Self {
        Self::single(Verdict::Yes, method, Some(witness))
    }

    fn no(method: Method) -> Self {
        Self::single(Verdict::No, method, None)
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }

    pub fn method_tag(&self) -> String {
        self.methods.iter().map(|m| m.tag()).collect::<Vec<_>>().join("+")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut doc = serde_json::json!({
            "verdict": self.verdict,
            "method": self.method_tag(),
        });
        if let Some(w) = &self.witness {
            doc["witness"] = w.to_json();
        }
        if let Some(c) = &self.classification {
            doc["classification"] = c.to_json();
        }
        doc
    }
}

fn require(g: &Graph, allowed: &[usize], what: &str) -> Result<DegreeSet> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let d = degree_set(g)?;
    if d.iter().any(|x| !allowed.contains(&x)) {
        return Err(Error::Precondition(format!("{what} needs degrees in {allowed:?}, got {d}")));
    }
    Ok(d)
}

fn walk(g: &Graph, start: VertexId) -> Vec<VertexId> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(next) = g.neighbors(cur).find(|&w| w != prev && w != start) {
        prev = cur;
        cur = next;
        order.push(cur);
    }
    order
}

/// Connected graphs with degrees in {1,2}: paths always embed, cycles iff even.
pub fn recognize_12(g: &Graph, dim: Dim) -> Result<RecognitionResult> {
    require(g, &[1, 2], "recognize_12")?;
    let method = Method::PathOrCycle;
    let points: Vec<(VertexId, Point)> = match g.vertices().find(|&v| g.degree(v) == 1) {
        Some(end) => walk(g, end)
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, [i as i64, 0, 0]))
            .collect(),
        None => {
            let n = g.vertex_count();
            if n % 2 == 1 {
                return Ok(RecognitionResult::no(method));
            }
            let half = (n / 2) as i64;
            let order = walk(g, g.vertices().next().unwrap());
            order
                .into_iter()
                .enumerate()
                .map(|(i, v)| {
                    let i = i as i64;
                    let p = if i < half { [i, 0, 0] } else { [2 * half - 1 - i, 1, 0] };
                    (v, p)
                })
                .collect()
        }
    };
    Ok(RecognitionResult::yes(method, Embedding::from_points(dim, points)))
}

/// Connected graphs of minimum degree 3 are never planar partial grids.
pub fn recognize_34(g: &Graph) -> Result<RecognitionResult> {
    require(g, &[3, 4], "recognize_34")?;
    Ok(RecognitionResult::no(Method::MinDegreeThree))
}

/// Connected graphs of minimum degree 4 are never 3d partial grids.
pub fn recognize_456_3d(g: &Graph) -> Result<RecognitionResult> {
    require(g, &[4, 5, 6], "recognize_456_3d")?;
    Ok(RecognitionResult::no(Method::MinDegreeFour3d))
}

/// Places each leaf next to its parent, trying directions in `priority`.
fn hang_leaves(g: &Graph, core: &Embedding, priority: &[Point]) -> Option<Embedding> {
    let mut e = core.clone();
    let mut used: std::collections::HashSet<Point> = core.points.values().copied().collect();
    for (&v, &p) in &core.points {
        for leaf in g.neighbors(v).filter(|&w| g.degree(w) == 1) {
            let spot = priority
                .iter()
                .map(|d| [p[0] + d[0], p[1] + d[1], p[2] + d[2]])
                .find(|q| !used.contains(q))?;
            used.insert(spot);
            e.points.insert(leaf, spot);
        }
    }
    Some(e)
}

const PLANAR_LEAF_ORDER: [Point; 4] = [[0, 1, 0], [-1, 0, 0], [0, -1, 0], [1, 0, 0]];
const SPATIAL_LEAF_ORDER: [Point; 6] = [
    [0, 1, 0],
    [-1, 0, 0],
    [0, -1, 0],
    [1, 0, 0],
    [0, 0, 1],
    [0, 0, -1],
];

fn grid_with_leaves(
    g: &Graph,
    dim: Dim,
    high: usize,
    method: Method,
) -> Result<RecognitionResult> {
    require(g, &[1, high], method.tag())?;
    if g.max_degree() == 1 {
        return recognize_12(g, dim).map(|mut r| {
            r.methods = vec![method];
            r
        });
    }
    let keep = g.vertices().filter(|&v| g.degree(v) == high).collect();
    let core = g.induced_subgraph(&keep);
    let shape = match dim {
        Dim::Two => is_grid(&core),
        Dim::Three => is_grid_3d(&core),
    };
    let Some(shape) = shape else {
        return Ok(RecognitionResult::no(method));
    };
    let order: &[Point] = match dim {
        Dim::Two => &PLANAR_LEAF_ORDER,
        Dim::Three => &SPATIAL_LEAF_ORDER,
    };
    match hang_leaves(g, &shape.embedding, order) {
        Some(e) if validate_embedding(g, &e)? => Ok(RecognitionResult::yes(method, e)),
        _ => Err(Error::Precondition(
            "leaves could not be attached to the core grid".into(),
        )),
    }
}

/// Connected {1,4}-graphs embed iff the degree-4 vertices induce a grid.
pub fn recognize_14(g: &Graph) -> Result<RecognitionResult> {
    grid_with_leaves(g, Dim::Two, 4, Method::GridWithLeaves)
}

/// Connected {1,6}-graphs embed in 3d iff the degree-6 vertices induce a 3d grid.
pub fn recognize_16_3d(g: &Graph) -> Result<RecognitionResult> {
    grid_with_leaves(g, Dim::Three, 6, Method::GridWithLeaves3d)
}

fn exact(g: &Graph, dim: Dim, budget: Option<u64>) -> Result<RecognitionResult> {
    let c = SolveConstraints {
        node_budget: budget,
        ..SolveConstraints::default()
    };
    Ok(match solve(g, dim, &c)? {
        SolveOutcome::Found(e) => RecognitionResult::yes(Method::ExactSearch, e),
        SolveOutcome::NotFound => RecognitionResult::no(Method::ExactSearch),
        SolveOutcome::BudgetExceeded => {
            RecognitionResult::single(Verdict::BudgetExceeded, Method::ExactSearch, None)
        }
    })
}

/// Routes one connected graph to the cheapest applicable procedure.
pub fn recognize_connected(g: &Graph, dim: Dim, budget: Option<u64>) -> Result<RecognitionResult> {
    if g.vertex_count() == 1 {
        let v = g.vertices().next().unwrap();
        return Ok(RecognitionResult::yes(
            Method::Trivial,
            Embedding::from_points(dim, [(v, [0, 0, 0])]),
        ));
    }
    let d = degree_set(g)?;
    let within = |s: &[usize]| d.iter().all(|x| s.contains(&x));
    match dim {
        _ if within(&[1, 2]) => recognize_12(g, dim),
        Dim::Two if within(&[3, 4]) => recognize_34(g),
        Dim::Two if within(&[1, 4]) => recognize_14(g),
        Dim::Three if d.smallest().unwrap() >= 4 && d.largest().unwrap() <= 6 => recognize_456_3d(g),
        Dim::Three if within(&[1, 6]) => recognize_16_3d(g),
        _ => exact(g, dim, budget),
    }
}

/// Lays components out side by side along the x axis.
fn juxtapose(dim: Dim, parts: &[Embedding]) -> Embedding {
    let mut points = BTreeMap::new();
    let mut x = 0;
    for part in parts {
        let part = part.normalized();
        let w = part.extents()[0];
        for (&v, &p) in &part.points {
            points.insert(v, [p[0] + x, p[1], p[2]]);
        }
        x += w + 1;
    }
    Embedding { dim, points }
}

fn threads() -> usize {
    std::env::var("PGR_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(1)
}

/// Decides whether `g` is a partial grid in `dim` dimensions. Components are
/// decided independently (in parallel when `PGR_THREADS` is above 1) and
/// the witness places them side by side.
pub fn recognize(g: &Graph, dim: Dim, budget: Option<u64>) -> Result<RecognitionResult> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let d = degree_set(g)?;
    let components = connected_components(g);
    let workers = threads().min(components.len());
    let results: Vec<Result<RecognitionResult>> = if workers <= 1 {
        components.iter().map(|c| recognize_connected(c, dim, budget)).collect()
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots: Vec<std::sync::Mutex<Option<Result<RecognitionResult>>>> =
            components.iter().map(|_| std::sync::Mutex::new(None)).collect();
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    let Some(c) = components.get(i) else { break };
                    *slots[i].lock().unwrap() = Some(recognize_connected(c, dim, budget));
                });
            }
        });
        slots
            .into_iter()
            .map(|m| m.into_inner().unwrap().expect("every component is processed"))
            .collect()
    };
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    let mut methods: Vec<Method> = results.iter().flat_map(|r| r.methods.clone()).collect();
    methods.sort_unstable();
    methods.dedup();
    let verdict = if results.iter().any(|r| r.verdict == Verdict::No) {
        Verdict::No
    } else if results.iter().any(|r| r.verdict == Verdict::BudgetExceeded) {
        Verdict::BudgetExceeded
    } else {
        Verdict::Yes
    };
    let witness = (verdict == Verdict::Yes).then(|| {
        let parts: Vec<Embedding> = results.into_iter().filter_map(|r| r.witness).collect();
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            juxtapose(dim, &parts)
        }
    });
    Ok(RecognitionResult {
        verdict,
        methods,
        witness,
        classification: classify(&d, dim).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, make_grid, make_grid_3d, path_graph, star_graph};

    fn check(g: &Graph, dim: Dim) -> Verdict {
        let r = recognize(g, dim, None).unwrap();
        if let Some(w) = &r.witness {
            assert!(validate_embedding(g, w).unwrap());
        }
        r.verdict
    }

    #[test]
    fn paths_and_cycles() {
        assert_eq!(check(&path_graph(5), Dim::Two), Verdict::Yes);
        assert_eq!(check(&cycle_graph(8), Dim::Two), Verdict::Yes);
        assert_eq!(check(&cycle_graph(7), Dim::Two), Verdict::No);
        assert_eq!(check(&cycle_graph(6), Dim::Three), Verdict::Yes);
    }

    #[test]
    fn grid_with_leaves() {
        let mut g = make_grid(3, 4).unwrap();
        for v in 0..12 {
            let missing = 4 - g.degree(v);
            for _ in 0..missing {
                let leaf = g.push_vertex();
                g.add_edge(v, leaf).unwrap();
            }
        }
        let r = recognize(&g, Dim::Two, None).unwrap();
        assert_eq!(r.methods, vec![Method::GridWithLeaves]);
        assert!(validate_embedding(&g, r.witness.as_ref().unwrap()).unwrap());
        assert_eq!(check(&star_graph(4), Dim::Two), Verdict::Yes);
    }

    #[test]
    fn three_d_routes() {
        let mut g = make_grid_3d(2, 2, 3).unwrap();
        for v in 0..12 {
            for _ in g.degree(v)..6 {
                let leaf = g.push_vertex();
                g.add_edge(v, leaf).unwrap();
            }
        }
        let r = recognize(&g, Dim::Three, None).unwrap();
        assert_eq!((r.verdict, r.methods.clone()), (Verdict::Yes, vec![Method::GridWithLeaves3d]));
        let k5 = crate::graph::complete_graph(5);
        assert_eq!(recognize(&k5, Dim::Three, None).unwrap().methods, vec![Method::MinDegreeFour3d]);
    }

    #[test]
    fn components_are_combined() {
        let g = path_graph(3).disjoint_union(&cycle_graph(4), 3).unwrap();
        assert_eq!(check(&g, Dim::Two), Verdict::Yes);
        let g = path_graph(3).disjoint_union(&cycle_graph(5), 3).unwrap();
        assert_eq!(check(&g, Dim::Two), Verdict::No);
    }

    #[test]
    fn preconditions() {
        assert!(recognize_12(&make_grid(2, 2).unwrap().disjoint_union(&path_graph(2), 4).unwrap(), Dim::Two).is_err());
        assert!(recognize_34(&path_graph(3)).is_err());
    }
}
