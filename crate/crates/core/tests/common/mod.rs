//! Oracles and instance generators shared by the integration tests. Nothing
//! here calls the library's search or recognizers, so these can serve as
//! independent references.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use pgr::formula::NaeFormula;
use pgr::graph::Graph;
use pgr::orientation::{Axis, OrientationMap};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("valid test graph")
}

/// Adjacency bit of the pair `i < j` among `n` vertices.
fn bit(i: usize, j: usize) -> u64 {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    1 << (j * (j - 1) / 2 + i)
}

fn adjacency(n: usize, mask: u64) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for j in 1..n {
        for i in 0..j {
            if mask & bit(i, j) != 0 {
                a[i][j] = true;
                a[j][i] = true;
            }
        }
    }
    a
}

/// Smallest relabelled mask over all orderings that list vertices by
/// non-decreasing degree; equal for isomorphic graphs.
fn canonical_mask(n: usize, mask: u64) -> u64 {
    let a = adjacency(n, mask);
    let deg: Vec<usize> = (0..n).map(|v| a[v].iter().filter(|&&x| x).count()).collect();
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        classes.entry(deg[v]).or_default().push(v);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    fn rec(classes: &[Vec<usize>], k: usize, used: &mut Vec<bool>, order: &mut Vec<usize>, a: &[Vec<bool>], best: &mut u64) {
        if k == classes.len() {
            let mut m = 0;
            for j in 1..order.len() {
                for i in 0..j {
                    if a[order[i]][order[j]] {
                        m |= bit(i, j);
                    }
                }
            }
            *best = (*best).min(m);
            return;
        }
        let class = &classes[k];
        let placed = class.iter().filter(|&&v| used[v]).count();
        if placed == class.len() {
            rec(classes, k + 1, used, order, a, best);
            return;
        }
        for &v in class {
            if !used[v] {
                used[v] = true;
                order.push(v);
                rec(classes, k, used, order, a, best);
                order.pop();
                used[v] = false;
            }
        }
    }
    let mut used = vec![false; n];
    rec(&classes, 0, &mut used, &mut order, &a, &mut best);
    best
}

fn mask_graph(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask & bit(i, j) != 0 {
                edges.push((i, j));
            }
        }
    }
    graph(n, &edges)
}

/// All connected graphs on exactly `n` vertices up to isomorphism, by
/// extending each connected graph on `n - 1` vertices with a new vertex
/// (every connected graph has a vertex whose removal keeps it connected).
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let mut level: Vec<u64> = vec![0];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for &m in &level {
            for nbrs in 1u64..(1 << (size - 1)) {
                let mut ext = m;
                for i in 0..size - 1 {
                    if nbrs >> i & 1 == 1 {
                        ext |= bit(i, size - 1);
                    }
                }
                let c = canonical_mask(size, ext);
                if seen.insert(c) {
                    next.push(c);
                }
            }
        }
        next.sort_unstable();
        level = next;
    }
    if n == 0 {
        return Vec::new();
    }
    level.into_iter().map(|m| mask_graph(n, m)).collect()
}

/// Exhaustive backtracking embedding test without symmetry breaking or
/// pruning beyond collisions: vertices are placed in BFS order, each next to
/// its BFS parent in every free direction.
pub fn naive_embeddable(g: &Graph, dim: usize) -> bool {
    let ids: Vec<usize> = g.vertices().collect();
    if ids.is_empty() {
        return true;
    }
    let mut order = Vec::new();
    let mut parent = BTreeMap::new();
    let mut seen = BTreeSet::from([ids[0]]);
    let mut queue = VecDeque::from([ids[0]]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for w in g.neighbors(v) {
            if seen.insert(w) {
                parent.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    if order.len() != ids.len() {
        return false;
    }
    let steps: Vec<[i64; 3]> = (0..dim)
        .flat_map(|a| {
            let mut p = [0; 3];
            let mut q = [0; 3];
            p[a] = 1;
            q[a] = -1;
            [p, q]
        })
        .collect();
    let mut at: BTreeMap<usize, [i64; 3]> = BTreeMap::new();
    let mut used: HashSet<[i64; 3]> = HashSet::new();
    fn rec(
        k: usize,
        g: &Graph,
        order: &[usize],
        parent: &BTreeMap<usize, usize>,
        steps: &[[i64; 3]],
        at: &mut BTreeMap<usize, [i64; 3]>,
        used: &mut HashSet<[i64; 3]>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        let candidates: Vec<[i64; 3]> = match parent.get(&v) {
            None => vec![[0, 0, 0]],
            Some(p) => {
                let b = at[p];
                steps.iter().map(|s| [b[0] + s[0], b[1] + s[1], b[2] + s[2]]).collect()
            }
        };
        for c in candidates {
            if used.contains(&c) {
                continue;
            }
            let fits = g.neighbors(v).all(|w| match at.get(&w) {
                Some(q) => (0..3).map(|i| (q[i] - c[i]).abs()).sum::<i64>() == 1,
                None => true,
            });
            if !fits {
                continue;
            }
            at.insert(v, c);
            used.insert(c);
            if rec(k + 1, g, order, parent, steps, at, used) {
                return true;
            }
            at.remove(&v);
            used.remove(&c);
        }
        false
    }
    rec(0, g, &order, &parent, &steps, &mut at, &mut used)
}

/// Brute-force NAE satisfiability over all assignments.
pub fn nae_oracle(phi: &NaeFormula) -> bool {
    let n = phi.variable_count();
    (0u32..1 << n).any(|bits| {
        phi.clauses().iter().all(|c| {
            let vals: Vec<bool> = c
                .iter()
                .map(|l| {
                    let v = (bits >> (l.var() - 1)) & 1 == 1;
                    v == l.positive()
                })
                .collect();
            vals.iter().any(|&x| x) && vals.iter().any(|&x| !x)
        })
    })
}

/// The formula of the logic-engine figure.
pub fn figure_formula() -> NaeFormula {
    NaeFormula::new(4, vec![[-2, 3, -4], [1, 2, 4], [1, -3, -4]]).unwrap()
}

/// Every formula with 1 or 2 variables and at most 2 clauses, each clause a
/// multiset of literals.
pub fn micro_formulas() -> Vec<NaeFormula> {
    let mut out = Vec::new();
    for n in 1..=2i32 {
        let lits: Vec<i32> = (1..=n).flat_map(|v| [v, -v]).collect();
        let mut clauses = Vec::new();
        for a in 0..lits.len() {
            for b in a..lits.len() {
                for c in b..lits.len() {
                    clauses.push([lits[a], lits[b], lits[c]]);
                }
            }
        }
        out.push(NaeFormula::new(n as usize, vec![]).unwrap());
        for &c in &clauses {
            out.push(NaeFormula::new(n as usize, vec![c]).unwrap());
        }
        for &c in &clauses {
            for &d in &clauses {
                out.push(NaeFormula::new(n as usize, vec![c, d]).unwrap());
            }
        }
    }
    out
}

/// A {1,4}-graph: `core` must have maximum degree 4; every core vertex gets
/// leaves up to degree 4.
pub fn fill_with_leaves(core: &Graph, target: usize) -> Graph {
    let mut g = core.clone();
    let core_ids: Vec<usize> = core.vertices().collect();
    for v in core_ids {
        while g.degree(v) < target {
            let l = g.push_vertex();
            g.add_edge(v, l).unwrap();
        }
    }
    g
}

/// Random connected graph on `n` vertices with maximum degree `max_deg`.
pub fn random_connected(r: &mut ChaCha8Rng, n: usize, max_deg: usize, extra: usize) -> Graph {
    let mut g = Graph::with_vertices(n);
    for v in 1..n {
        let choices: Vec<usize> = (0..v).filter(|&u| g.degree(u) < max_deg).collect();
        let Some(&u) = choices.choose(r) else { break };
        g.add_edge(u, v).unwrap();
    }
    for _ in 0..extra {
        let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
        if a != b && !g.has_edge(a, b) && g.degree(a) < max_deg && g.degree(b) < max_deg {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}

/// Instances for the {1,4} theorem: grid cores up to 3x4 with leaves,
/// perturbed cores (an edge removed, moved or added), and random cores.
pub fn one_four_instances(count: usize, seed: u64) -> Vec<Graph> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for m in 1..=3 {
        for n in m..=4 {
            let core = grid_core(m, n);
            out.push(fill_with_leaves(&core, 4));
        }
    }
    while out.len() < count {
        let kind = r.gen_range(0..3);
        let core = match kind {
            0 | 1 => {
                let m = r.gen_range(1..=3);
                let n = r.gen_range(1..=4);
                let mut core = grid_core(m, n);
                let edges: Vec<_> = core.edges().collect();
                if kind == 0 && !edges.is_empty() {
                    let e = edges[r.gen_range(0..edges.len())];
                    core.remove_edge(e.0, e.1);
                }
                for _ in 0..r.gen_range(0..=2) {
                    let k = core.vertex_count();
                    let (a, b) = (r.gen_range(0..k), r.gen_range(0..k));
                    if a != b && !core.has_edge(a, b) && core.degree(a) < 4 && core.degree(b) < 4 {
                        core.add_edge(a, b).unwrap();
                    }
                }
                core
            }
            _ => {
                let k = r.gen_range(1..=6);
                let extra = r.gen_range(0..=3);
                random_connected(&mut r, k, 4, extra)
            }
        };
        if !core.is_connected() {
            continue;
        }
        out.push(fill_with_leaves(&core, 4));
    }
    out
}

/// An `m` by `n` grid built directly from coordinates.
pub fn grid_core(m: usize, n: usize) -> Graph {
    let id = |i: usize, j: usize| i * n + j;
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if j + 1 < n {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < m {
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    graph(m * n, &edges)
}

/// Random connected graphs on `n` vertices with every degree in `lo..=hi`.
pub fn random_degree_bounded(r: &mut ChaCha8Rng, n: usize, lo: usize, hi: usize) -> Option<Graph> {
    for _ in 0..200 {
        let mut g = Graph::with_vertices(n);
        let mut stuck = 0;
        while (0..n).any(|v| g.degree(v) < lo) && stuck < 200 {
            let low: Vec<usize> = (0..n).filter(|&v| g.degree(v) < lo).collect();
            let a = *low.choose(r).unwrap();
            let options: Vec<usize> = (0..n).filter(|&b| b != a && !g.has_edge(a, b) && g.degree(b) < hi).collect();
            match options.choose(r) {
                Some(&b) => g.add_edge(a, b).unwrap(),
                None => stuck += 1,
            }
        }
        if (0..n).all(|v| (lo..=hi).contains(&g.degree(v))) && g.is_connected() {
            return Some(g);
        }
    }
    None
}

/// Some labelling with at most two edges of each axis per vertex, found by
/// backtracking over edges in order.
pub fn locally_valid_labelling(g: &Graph) -> Option<OrientationMap> {
    let edges: Vec<_> = g.edges().collect();
    let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut f = OrientationMap::new();
    fn rec(k: usize, edges: &[pgr::graph::Edge], count: &mut BTreeMap<(usize, usize), usize>, f: &mut OrientationMap) -> bool {
        let Some(e) = edges.get(k) else { return true };
        for (i, axis) in [Axis::Horizontal, Axis::Vertical].into_iter().enumerate() {
            if count.get(&(e.0, i)).copied().unwrap_or(0) < 2 && count.get(&(e.1, i)).copied().unwrap_or(0) < 2 {
                *count.entry((e.0, i)).or_default() += 1;
                *count.entry((e.1, i)).or_default() += 1;
                f.set(e.0, e.1, axis);
                if rec(k + 1, edges, count, f) {
                    return true;
                }
                *count.get_mut(&(e.0, i)).unwrap() -= 1;
                *count.get_mut(&(e.1, i)).unwrap() -= 1;
            }
        }
        false
    }
    rec(0, &edges, &mut count, &mut f).then_some(f)
}

/// Labelling read off hand-made coordinates.
pub fn labelling_from(g: &Graph, at: &[(i64, i64)]) -> OrientationMap {
    let mut f = OrientationMap::new();
    for e in g.edges() {
        let (a, b) = (at[e.0], at[e.1]);
        assert_eq!((a.0 - b.0).abs() + (a.1 - b.1).abs(), 1, "hand drawing of edge {e:?}");
        f.set(e.0, e.1, if a.1 == b.1 { Axis::Horizontal } else { Axis::Vertical });
    }
    f
}

pub struct MicroInstance {
    pub name: &'static str,
    pub graph: Graph,
    pub orientation: OrientationMap,
    pub embeddable: bool,
}

/// Ten embeddable oriented graphs (labels read off hand drawings) and ten
/// non-embeddable ones (odd cycles, or two vertices with three common
/// neighbours, or a triangle), each with at most five vertices and maximum
/// degree three.
pub fn micro_suite() -> Vec<MicroInstance> {
    let yes: Vec<(&'static str, Vec<(usize, usize)>, Vec<(i64, i64)>)> = vec![
        ("edge", vec![(0, 1)], vec![(0, 0), (1, 0)]),
        ("straight P3", vec![(0, 1), (1, 2)], vec![(0, 0), (1, 0), (2, 0)]),
        ("bent P3", vec![(0, 1), (1, 2)], vec![(0, 0), (1, 0), (1, 1)]),
        ("zigzag P4", vec![(0, 1), (1, 2), (2, 3)], vec![(0, 0), (1, 0), (1, 1), (2, 1)]),
        ("hook P5", vec![(0, 1), (1, 2), (2, 3), (3, 4)], vec![(0, 0), (1, 0), (2, 0), (2, 1), (1, 1)]),
        ("claw", vec![(0, 1), (0, 2), (0, 3)], vec![(0, 0), (1, 0), (-1, 0), (0, 1)]),
        ("chair", vec![(0, 1), (0, 2), (0, 3), (3, 4)], vec![(0, 0), (1, 0), (-1, 0), (0, 1), (1, 1)]),
        ("square", vec![(0, 1), (1, 2), (2, 3), (0, 3)], vec![(0, 0), (1, 0), (1, 1), (0, 1)]),
        ("banner", vec![(0, 1), (1, 2), (2, 3), (0, 3), (3, 4)], vec![(0, 0), (1, 0), (1, 1), (0, 1), (-1, 1)]),
        ("vertical P4", vec![(0, 1), (1, 2), (2, 3)], vec![(0, 0), (0, 1), (0, 2), (0, 3)]),
    ];
    let no: Vec<(&'static str, Vec<(usize, usize)>)> = vec![
        ("triangle", vec![(0, 1), (1, 2), (0, 2)]),
        ("paw", vec![(0, 1), (1, 2), (0, 2), (2, 3)]),
        ("tailed triangle", vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]),
        ("bull", vec![(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)]),
        ("diamond", vec![(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]),
        ("K4", vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        ("K2,3", vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
        ("pentagon", vec![(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
        ("house", vec![(0, 1), (1, 2), (2, 3), (0, 3), (2, 4), (3, 4)]),
        ("kite", vec![(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 4)]),
    ];
    let mut out = Vec::new();
    for (name, edges, at) in yes {
        let g = graph(at.len(), &edges);
        let orientation = labelling_from(&g, &at);
        out.push(MicroInstance {
            name,
            graph: g,
            orientation,
            embeddable: true,
        });
    }
    for (name, edges) in no {
        let n = edges.iter().map(|e| e.0.max(e.1)).max().unwrap() + 1;
        let g = graph(n, &edges);
        let orientation = locally_valid_labelling(&g).expect("degree at most three");
        out.push(MicroInstance {
            name,
            graph: g,
            orientation,
            embeddable: false,
        });
    }
    out
}

/// Orientation-aware substitution of `kind` with the orientation the solver
/// is given for the result.
pub fn substitute(kind: pgr::gadgets::GadgetKind, g: &Graph, f: &OrientationMap) -> pgr::Result<(Graph, OrientationMap)> {
    use pgr::gadgets::*;
    let (out, m) = match kind {
        GadgetKind::DoubleLadder => double_ladder_substitution(g, f)?,
        GadgetKind::ThreePlug => three_plug_substitution(g, f)?,
        GadgetKind::UTree => utree_substitution(g, f)?,
        GadgetKind::Square => {
            let (q, m) = square_substitution(g, f)?;
            let o = square_orientation(&q, &m)?;
            return Ok((q, o));
        }
        GadgetKind::Windmill => {
            return Err(pgr::Error::Gadget("the windmill substitution takes no orientation".into()));
        }
    };
    let o = compose_orientation(&Gadget::catalog(kind).orientation(), f, &m)?;
    Ok((out, o))
}
