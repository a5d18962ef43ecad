//! Exact backtracking search for unit-length lattice embeddings.
//!
//! The root is pinned at the origin. Vertices are then placed one at a time,
//! always picking the frontier vertex with the fewest feasible lattice points
//! (forced placements go first). Lattice symmetry is broken by keeping the
//! pointwise stabilizer of the partial placement: a candidate point is only
//! tried if no stabilizer element maps it to a smaller point. Before a
//! placement is accepted, every affected placed vertex must still have room
//! for its unplaced neighbours (a Hall check per axis when edges carry
//! orientation labels).

use std::collections::{BTreeSet, HashMap};

use super::embedding::{canonical_labeled, canonical_unchecked, CanonicalDrawing, Embedding};
use super::lattice::{add, symmetry_group, Dim, Point, Symmetry};
use crate::error::{Error, Result};
use crate::graph::{is_bipartite, Graph, VertexId};
use crate::orientation::{Axis, OrientationMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveConstraints {
    /// Horizontal/vertical labels (2d only). Unlabelled edges are free.
    pub orientation: Option<OrientationMap>,
    /// Maximum number of lattice points spanned per axis.
    pub extents: Option<[usize; 3]>,
    /// Cap on placement attempts.
    pub node_budget: Option<u64>,
    /// Reject graphs failing the bipartite and maximum degree tests up front.
    pub prefilter: bool,
}

impl Default for SolveConstraints {
    fn default() -> Self {
        SolveConstraints {
            orientation: None,
            extents: None,
            node_budget: None,
            prefilter: true,
        }
    }
}

impl SolveConstraints {
    pub fn with_orientation(orientation: OrientationMap) -> Self {
        SolveConstraints {
            orientation: Some(orientation),
            ..Self::default()
        }
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }

    pub fn raw(mut self) -> Self {
        self.prefilter = false;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Found(Embedding),
    NotFound,
    BudgetExceeded,
}

impl SolveOutcome {
    pub fn exists(&self) -> Option<bool> {
        match self {
            SolveOutcome::Found(_) => Some(true),
            SolveOutcome::NotFound => Some(false),
            SolveOutcome::BudgetExceeded => None,
        }
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            SolveOutcome::Found(e) => Some(e),
            _ => None,
        }
    }
}

/// Result of an enumeration run.
#[derive(Clone, Debug, Default)]
pub struct Enumeration {
    /// Distinct drawings in ascending order.
    pub drawings: Vec<CanonicalDrawing>,
    /// One embedding per vertex-labelled equivalence class.
    pub embeddings: Vec<Embedding>,
    /// The search space was exhausted, so the lists are exact.
    pub complete: bool,
    pub budget_exceeded: bool,
    pub nodes: u64,
}

/// Finds one embedding of a connected graph.
pub fn solve(g: &Graph, dim: Dim, c: &SolveConstraints) -> Result<SolveOutcome> {
    let mut search = match Search::prepare(g, dim, c)? {
        Prepared::Trivial(outcome) => return Ok(outcome),
        Prepared::Search(s) => s,
    };
    search.order_twin_leaves();
    let mut found = None;
    let status = search.run(&mut |e| {
        found = Some(e.clone());
        false
    });
    Ok(match (status, found) {
        (_, Some(e)) => SolveOutcome::Found(e),
        (Status::Budget, None) => SolveOutcome::BudgetExceeded,
        (_, None) => SolveOutcome::NotFound,
    })
}

/// Distinct drawings of a connected graph, up to `limit` of them.
pub fn enumerate_embeddings(g: &Graph, dim: Dim, limit: usize) -> Result<Enumeration> {
    enumerate_with(g, dim, &SolveConstraints::default(), limit)
}

/// Like [`enumerate_embeddings`] but with constraints. `limit` caps the number
/// of vertex-labelled classes collected (and therefore drawings).
pub fn enumerate_with(
    g: &Graph,
    dim: Dim,
    c: &SolveConstraints,
    limit: usize,
) -> Result<Enumeration> {
    let mut search = match Search::prepare(g, dim, c)? {
        Prepared::Trivial(SolveOutcome::Found(e)) => {
            return Ok(Enumeration {
                drawings: vec![canonical_unchecked(g, &e)],
                embeddings: vec![e],
                complete: true,
                budget_exceeded: false,
                nodes: 0,
            })
        }
        Prepared::Trivial(_) => {
            return Ok(Enumeration {
                complete: true,
                ..Enumeration::default()
            })
        }
        Prepared::Search(s) => s,
    };
    let mut drawings = BTreeSet::new();
    let mut labeled = BTreeSet::new();
    let mut embeddings = Vec::new();
    let status = search.run(&mut |e| {
        drawings.insert(canonical_unchecked(g, e));
        if labeled.insert(canonical_labeled(e)) {
            embeddings.push(e.clone());
        }
        labeled.len() < limit
    });
    Ok(Enumeration {
        drawings: drawings.into_iter().collect(),
        embeddings,
        complete: status == Status::Exhausted,
        budget_exceeded: status == Status::Budget,
        nodes: search.nodes,
    })
}

enum Prepared {
    Trivial(SolveOutcome),
    Search(Box<Search>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Exhausted,
    Stopped,
    Budget,
}

struct Frame {
    v: usize,
    cands: Vec<Point>,
    next: usize,
    placed: bool,
    /// Stabilizer (indices into `group`) before this vertex was placed.
    stab: Vec<u8>,
    lo: Point,
    hi: Point,
}

struct Search {
    dim: Dim,
    ids: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
    /// `allowed[v][k]`: bitmask over directions for the step from `v` to `adj[v][k]`.
    allowed: Vec<Vec<u8>>,
    /// Per vertex: counts of unplaced neighbours with H label, V label, no label.
    group: Vec<Symmetry>,
    extents: Option<[i64; 3]>,
    budget: Option<u64>,
    labelled: bool,
    /// Per leaf: the other leaves on the same parent with the same label.
    /// Once the stabilizer is trivial, twins placed from then on are kept in
    /// increasing point order, which any drawing can be brought to by
    /// swapping them.
    twins: Vec<Vec<usize>>,
    late: Vec<bool>,
    stab_trivial: bool,

    pos: Vec<Option<Point>>,
    occ: HashMap<Point, usize>,
    placed_nbrs: Vec<u32>,
    frontier: BTreeSet<usize>,
    placed_count: usize,
    nodes: u64,
}

const AXIS_MASKS: [u8; 3] = [0b000011, 0b001100, 0b110000];

impl Search {
    fn prepare(g: &Graph, dim: Dim, c: &SolveConstraints) -> Result<Prepared> {
        if let Some(f) = &c.orientation {
            if dim != Dim::Two {
                return Err(Error::OrientationIn3d);
            }
            f.check_against(g, false)?;
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        if g.is_empty() {
            return Ok(Prepared::Trivial(SolveOutcome::Found(Embedding::new(dim))));
        }
        if c.prefilter && (g.max_degree() > dim.max_degree() || !is_bipartite(g)) {
            return Ok(Prepared::Trivial(SolveOutcome::NotFound));
        }
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let all: u8 = (1u8 << dim.max_degree()) - 1;
        let mut adj = Vec::with_capacity(ids.len());
        let mut allowed = Vec::with_capacity(ids.len());
        for &v in &ids {
            let nbrs: Vec<usize> = g.neighbors(v).map(|w| index[&w]).collect();
            let masks: Vec<u8> = g
                .neighbors(v)
                .map(|w| {
                    match c.orientation.as_ref().and_then(|f| f.get(v, w)) {
                        Some(Axis::Horizontal) => AXIS_MASKS[0],
                        Some(Axis::Vertical) => AXIS_MASKS[1],
                        _ => all,
                    }
                })
                .collect();
            adj.push(nbrs);
            allowed.push(masks);
        }
        let labelled = c.orientation.is_some();
        let extents = c.extents.map(|e| [e[0] as i64, e[1] as i64, e[2] as i64]);
        let group: Vec<Symmetry> = symmetry_group(dim)
            .into_iter()
            .filter(|s| !labelled || s.keeps_axes())
            .filter(|s| match extents {
                Some(ext) => (0..3).all(|i| ext[i] == ext[s.perm[i]]),
                None => true,
            })
            .collect();
        let n = ids.len();
        Ok(Prepared::Search(Box::new(Search {
            dim,
            ids,
            adj,
            allowed,
            group,
            extents,
            budget: c.node_budget,
            labelled,
            twins: vec![Vec::new(); n],
            late: vec![false; n],
            stab_trivial: false,
            pos: vec![None; n],
            occ: HashMap::with_capacity(n),
            placed_nbrs: vec![0; n],
            frontier: BTreeSet::new(),
            placed_count: 0,
            nodes: 0,
        })))
    }

    fn order_twin_leaves(&mut self) {
        let mut groups: HashMap<(usize, u8), Vec<usize>> = HashMap::new();
        for v in 0..self.adj.len() {
            if let [u] = self.adj[v][..] {
                groups.entry((u, self.step_mask(u, v))).or_default().push(v);
            }
        }
        for members in groups.values() {
            for &v in members {
                self.twins[v] = members.iter().copied().filter(|&w| w != v).collect();
            }
        }
    }

    fn twin_order_holds(&self, v: usize, q: Point) -> bool {
        !self.stab_trivial
            || self.twins[v].iter().all(|&w| match self.pos[w] {
                Some(pw) if self.late[w] => (w < v) == (pw < q),
                _ => true,
            })
    }

    fn root(&self) -> usize {
        // highest degree, lowest id
        (0..self.adj.len())
            .max_by_key(|&v| (self.adj[v].len(), std::cmp::Reverse(v)))
            .unwrap()
    }

    fn place(&mut self, v: usize, p: Point) {
        self.pos[v] = Some(p);
        self.occ.insert(p, v);
        self.placed_count += 1;
        self.frontier.remove(&v);
        for k in 0..self.adj[v].len() {
            let w = self.adj[v][k];
            self.placed_nbrs[w] += 1;
            if self.pos[w].is_none() {
                self.frontier.insert(w);
            }
        }
    }

    fn unplace(&mut self, v: usize) {
        let p = self.pos[v].take().expect("vertex is placed");
        self.occ.remove(&p);
        self.placed_count -= 1;
        for k in 0..self.adj[v].len() {
            let w = self.adj[v][k];
            self.placed_nbrs[w] -= 1;
            if self.placed_nbrs[w] == 0 {
                self.frontier.remove(&w);
            }
        }
        if self.placed_nbrs[v] > 0 {
            self.frontier.insert(v);
        }
    }

    /// Feasible points for unplaced `v` given its placed neighbours.
    fn candidates(&self, v: usize, lo: Point, hi: Point, out: &mut Vec<Point>) {
        out.clear();
        let dirs = self.dim.directions();
        let mut anchor = None;
        for (k, &u) in self.adj[v].iter().enumerate() {
            if self.pos[u].is_some() {
                anchor = Some((k, u));
                break;
            }
        }
        let Some((_, u)) = anchor else { return };
        let pu = self.pos[u].unwrap();
        let mask_from_u = self.step_mask(u, v);
        'dir: for (d, &step) in dirs.iter().enumerate() {
            if mask_from_u >> d & 1 == 0 {
                continue;
            }
            let q = add(pu, step);
            if self.occ.contains_key(&q) {
                continue;
            }
            for &w in &self.adj[v] {
                if w == u {
                    continue;
                }
                if let Some(pw) = self.pos[w] {
                    match super::lattice::direction_index(pw, q) {
                        Some(dw) if self.step_mask(w, v) >> dw & 1 == 1 => {}
                        _ => continue 'dir,
                    }
                }
            }
            if let Some(ext) = self.extents {
                for i in 0..3 {
                    if hi[i].max(q[i]) - lo[i].min(q[i]) + 1 > ext[i] {
                        continue 'dir;
                    }
                }
            }
            if !self.twin_order_holds(v, q) {
                continue;
            }
            out.push(q);
        }
    }

    fn step_mask(&self, from: usize, to: usize) -> u8 {
        let k = self.adj[from].iter().position(|&x| x == to).unwrap();
        self.allowed[from][k]
    }

    /// Placed vertex `x` still has room for its unplaced neighbours.
    fn has_room(&self, x: usize) -> bool {
        let p = self.pos[x].unwrap();
        let dirs = self.dim.directions();
        let mut free = [0u32; 3];
        for (d, &step) in dirs.iter().enumerate() {
            if !self.occ.contains_key(&add(p, step)) {
                free[d / 2] += 1;
            }
        }
        let total_free: u32 = free.iter().sum();
        let mut need = [0u32; 3];
        let mut need_any = 0u32;
        for (k, &w) in self.adj[x].iter().enumerate() {
            if self.pos[w].is_some() {
                continue;
            }
            let m = self.allowed[x][k];
            if self.labelled && m == AXIS_MASKS[0] {
                need[0] += 1;
            } else if self.labelled && m == AXIS_MASKS[1] {
                need[1] += 1;
            } else {
                need_any += 1;
            }
        }
        need[0] <= free[0] && need[1] <= free[1] && need[0] + need[1] + need_any <= total_free
    }

    fn feasible_after(&self, v: usize) -> bool {
        if !self.has_room(v) {
            return false;
        }
        let p = self.pos[v].unwrap();
        for &step in self.dim.directions() {
            if let Some(&x) = self.occ.get(&add(p, step)) {
                if !self.has_room(x) {
                    return false;
                }
            }
        }
        true
    }

    /// Minimum-remaining-values choice over the frontier.
    fn select(&self, lo: Point, hi: Point) -> Option<(usize, Vec<Point>)> {
        let mut best: Option<(usize, Vec<Point>)> = None;
        let mut buf = Vec::with_capacity(6);
        for &v in &self.frontier {
            self.candidates(v, lo, hi, &mut buf);
            let better = match &best {
                None => true,
                Some((_, c)) => buf.len() < c.len(),
            };
            if better {
                let done = buf.len() <= 1;
                best = Some((v, buf.clone()));
                if done {
                    break;
                }
            }
        }
        best
    }

    fn embedding(&self) -> Embedding {
        Embedding::from_points(
            self.dim,
            self.pos
                .iter()
                .enumerate()
                .map(|(i, p)| (self.ids[i], p.expect("complete placement"))),
        )
    }

    fn symmetric_skip(&self, stab: &[u8], p: Point) -> bool {
        stab.iter().any(|&gi| self.group[gi as usize].apply(p) < p)
    }

    /// Depth-first search. `on_solution` returns whether to keep going.
    fn run(&mut self, on_solution: &mut dyn FnMut(&Embedding) -> bool) -> Status {
        let n = self.adj.len();
        let root = self.root();
        let origin = [0, 0, 0];
        self.place(root, origin);
        let full: Vec<u8> = (0..self.group.len() as u8).collect();
        let mut stab_now = full;
        let (mut lo, mut hi) = (origin, origin);
        let mut stack: Vec<Frame> = Vec::new();
        let status = 'outer: loop {
            // descend: choose a vertex at the current state
            self.stab_trivial = stab_now.len() <= 1;
            if self.placed_count == n {
                if !on_solution(&self.embedding()) {
                    break 'outer Status::Stopped;
                }
            } else if let Some((v, cands)) = self.select(lo, hi) {
                stack.push(Frame {
                    v,
                    cands,
                    next: 0,
                    placed: false,
                    stab: stab_now.clone(),
                    lo,
                    hi,
                });
            }
            // advance to the next untried candidate, backtracking as needed
            loop {
                let Some(top) = stack.len().checked_sub(1) else {
                    break 'outer Status::Exhausted;
                };
                if stack[top].placed {
                    let v = stack[top].v;
                    self.unplace(v);
                    self.late[v] = false;
                    stack[top].placed = false;
                }
                if stack[top].next >= stack[top].cands.len() {
                    stack.pop();
                    continue;
                }
                let p = stack[top].cands[stack[top].next];
                stack[top].next += 1;
                if self.symmetric_skip(&stack[top].stab, p) {
                    continue;
                }
                self.nodes += 1;
                if let Some(b) = self.budget {
                    if self.nodes > b {
                        break 'outer Status::Budget;
                    }
                }
                let v = stack[top].v;
                self.place(v, p);
                if !self.feasible_after(v) {
                    self.unplace(v);
                    continue;
                }
                stack[top].placed = true;
                self.late[v] = stack[top].stab.len() <= 1;
                stab_now = stack[top]
                    .stab
                    .iter()
                    .copied()
                    .filter(|&gi| self.group[gi as usize].apply(p) == p)
                    .collect();
                lo = stack[top].lo;
                hi = stack[top].hi;
                for i in 0..3 {
                    lo[i] = lo[i].min(p[i]);
                    hi[i] = hi[i].max(p[i]);
                }
                continue 'outer;
            }
        };
        // leave the search reusable
        while let Some(f) = stack.pop() {
            if f.placed {
                self.unplace(f.v);
                self.late[f.v] = false;
            }
        }
        self.unplace(root);
        status
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::embedding::validate_embedding;
    use crate::graph::{complete_graph, cycle_graph, make_grid, path_graph, star_graph};

    fn exists(g: &Graph, dim: Dim) -> Option<bool> {
        solve(g, dim, &SolveConstraints::default()).unwrap().exists()
    }

    #[test]
    fn small_verdicts() {
        assert_eq!(exists(&cycle_graph(3), Dim::Two), Some(false));
        assert_eq!(exists(&star_graph(5), Dim::Two), Some(false));
        assert_eq!(exists(&star_graph(5), Dim::Three), Some(true));
        assert_eq!(exists(&make_grid(3, 5).unwrap(), Dim::Two), Some(true));
        assert_eq!(exists(&complete_graph(4), Dim::Three), Some(false));
    }

    #[test]
    fn raw_search_agrees_with_prefilter() {
        let raw = SolveConstraints::default().raw();
        for g in [cycle_graph(3), cycle_graph(5), star_graph(5), complete_graph(4)] {
            assert_eq!(solve(&g, Dim::Two, &raw).unwrap().exists(), Some(false));
        }
    }

    #[test]
    fn witness_is_valid() {
        let g = make_grid(3, 4).unwrap();
        let e = solve(&g, Dim::Two, &SolveConstraints::default()).unwrap();
        assert!(validate_embedding(&g, e.embedding().unwrap()).unwrap());
    }

    #[test]
    fn path_drawings() {
        assert_eq!(enumerate_embeddings(&path_graph(2), Dim::Two, 100).unwrap().drawings.len(), 1);
        let e = enumerate_embeddings(&path_graph(3), Dim::Two, 100).unwrap();
        assert!(e.complete);
        assert_eq!(e.drawings.len(), 2);
    }

    #[test]
    fn disconnected_and_orientation_errors() {
        let g = path_graph(2).disjoint_union(&path_graph(2), 2).unwrap();
        assert_eq!(solve(&g, Dim::Two, &SolveConstraints::default()), Err(Error::Disconnected));
        let c = SolveConstraints::with_orientation(OrientationMap::new());
        assert_eq!(solve(&path_graph(2), Dim::Three, &c), Err(Error::OrientationIn3d));
    }

    #[test]
    fn orientation_is_respected() {
        let g = path_graph(3);
        let mut f = OrientationMap::new();
        f.set(0, 1, Axis::Horizontal);
        f.set(1, 2, Axis::Vertical);
        let out = solve(&g, Dim::Two, &SolveConstraints::with_orientation(f)).unwrap();
        let e = out.embedding().unwrap();
        assert_eq!(e.get(0).unwrap()[1], e.get(1).unwrap()[1]);
        assert_eq!(e.get(1).unwrap()[0], e.get(2).unwrap()[0]);
        // a 4-cycle of horizontal edges cannot close up
        let mut f = OrientationMap::new();
        let c4 = cycle_graph(4);
        for e in c4.edges() {
            f.set(e.0, e.1, Axis::Horizontal);
        }
        let out = solve(&c4, Dim::Two, &SolveConstraints::with_orientation(f)).unwrap();
        assert_eq!(out, SolveOutcome::NotFound);
    }

    #[test]
    fn budget_is_reported() {
        let g = make_grid(4, 4).unwrap();
        let out = solve(&g, Dim::Two, &SolveConstraints::default().budget(3)).unwrap();
        assert_eq!(out, SolveOutcome::BudgetExceeded);
    }

    #[test]
    fn extents_limit_the_box() {
        let g = path_graph(4);
        let mut c = SolveConstraints { extents: Some([2, 2, 1]), ..SolveConstraints::default() };
        let e = solve(&g, Dim::Two, &c).unwrap();
        assert_eq!(e.embedding().unwrap().extents(), [2, 2, 1]);
        c.extents = Some([3, 1, 1]);
        assert_eq!(solve(&g, Dim::Two, &c).unwrap(), SolveOutcome::NotFound);
    }
}
