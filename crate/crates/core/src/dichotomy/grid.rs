//! Recognition of complete grids.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::embed::{validate_embedding, Dim, Embedding, Point};
use crate::graph::{Graph, VertexId};

/// A complete grid found in a graph, dimensions sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridShape {
    pub dims: Vec<usize>,
    pub embedding: Embedding,
}

fn grid_edge_count(dims: &[usize]) -> usize {
    let total: usize = dims.iter().product();
    dims.iter().map(|&d| total / d * (d - 1)).sum()
}

/// Accepts `coords` only if they place every vertex injectively in the box
/// `dims` with all edges unit length and as many edges as the full grid.
fn verify_grid(g: &Graph, coords: BTreeMap<VertexId, Point>, dim: Dim, dims: &[usize]) -> Option<Embedding> {
    if coords.len() != g.vertex_count()
        || dims.iter().product::<usize>() != g.vertex_count()
        || grid_edge_count(dims) != g.edge_count()
    {
        return None;
    }
    let e = Embedding::from_points(dim, coords);
    validate_embedding(g, &e).ok()?.then_some(e)
}

fn path_order(g: &Graph) -> Option<Vec<VertexId>> {
    let start = g.vertices().find(|&v| g.degree(v) <= 1)?;
    let mut order = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).find(|&w| Some(w) != prev);
        match next {
            Some(w) => {
                prev = Some(cur);
                cur = w;
                order.push(w);
            }
            None => break,
        }
        if order.len() > g.vertex_count() {
            return None;
        }
    }
    Some(order)
}

struct Sweep<'a> {
    g: &'a Graph,
    at: HashMap<(i64, i64), VertexId>,
    pos: BTreeMap<VertexId, Point>,
}

impl Sweep<'_> {
    fn put(&mut self, x: i64, y: i64, v: VertexId) -> Option<()> {
        if self.pos.insert(v, [x, y, 0]).is_some() {
            return None;
        }
        self.at.insert((x, y), v);
        Some(())
    }

    /// The only unplaced common neighbour of the vertices at `p` and `q`.
    fn complete(&mut self, x: i64, y: i64, p: (i64, i64), q: (i64, i64)) -> Option<()> {
        let (u, w) = (self.at[&p], self.at[&q]);
        let mut common = self
            .g
            .neighbors(u)
            .filter(|&x| self.g.has_edge(x, w) && !self.pos.contains_key(&x));
        let v = common.next()?;
        if common.next().is_some() {
            return None;
        }
        self.put(x, y, v)
    }

    /// The neighbour of the vertex at `p` other than those at `skip`, if
    /// there is at most one.
    fn extend(&self, p: (i64, i64), skip: [(i64, i64); 2]) -> Option<Option<VertexId>> {
        let skip = skip.map(|q| self.at[&q]);
        let mut next = self.g.neighbors(self.at[&p]).filter(|w| !skip.contains(w));
        let first = next.next();
        if next.next().is_some() {
            return None;
        }
        Some(first)
    }
}

/// Sweeps the grid from corner `c` with `a` on the x axis and `b` on the y
/// axis, placing each vertex as the fourth corner of a unit square.
fn sweep(g: &Graph, c: VertexId, a: VertexId, b: VertexId) -> Option<BTreeMap<VertexId, Point>> {
    let mut s = Sweep {
        g,
        at: HashMap::new(),
        pos: BTreeMap::new(),
    };
    s.put(0, 0, c)?;
    s.put(1, 0, a)?;
    s.put(0, 1, b)?;
    s.complete(1, 1, (1, 0), (0, 1))?;

    // Bottom two rows, column by column.
    let mut width = 2;
    while let Some(v) = s.extend((width - 1, 0), [(width - 2, 0), (width - 1, 1)])? {
        s.put(width, 0, v)?;
        s.complete(width, 1, (width, 0), (width - 1, 1))?;
        width += 1;
    }
    // Remaining rows, one at a time.
    let mut height = 2;
    while let Some(v) = s.extend((0, height - 1), [(0, height - 2), (1, height - 1)])? {
        s.put(0, height, v)?;
        for i in 1..width {
            s.complete(i, height, (i, height - 1), (i - 1, height))?;
        }
        height += 1;
    }
    Some(s.pos)
}

/// Finds `M <= N` and an embedding if `g` is isomorphic to the `M x N` grid.
pub fn is_grid(g: &Graph) -> Option<GridShape> {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() || g.max_degree() > 4 {
        return None;
    }
    if n == 1 {
        let v = g.vertices().next().unwrap();
        return Some(GridShape {
            dims: vec![1, 1],
            embedding: Embedding::from_points(Dim::Two, [(v, [0, 0, 0])]),
        });
    }
    if g.max_degree() <= 2 && g.edge_count() == n - 1 {
        let order = path_order(g)?;
        let coords = order.iter().enumerate().map(|(i, &v)| (v, [i as i64, 0, 0])).collect();
        let embedding = verify_grid(g, coords, Dim::Two, &[1, n])?;
        return Some(GridShape {
            dims: vec![1, n],
            embedding,
        });
    }
    let corners: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) == 2).collect();
    let rim = g.vertices().filter(|&v| g.degree(v) == 3).count();
    if corners.len() != 4 {
        return None;
    }
    for &c in &corners {
        let nb: Vec<VertexId> = g.neighbors(c).collect();
        for (a, b) in [(nb[0], nb[1]), (nb[1], nb[0])] {
            let Some(coords) = sweep(g, c, a, b) else { continue };
            let w = coords.values().map(|p| p[0]).max().unwrap() as usize + 1;
            let h = coords.values().map(|p| p[1]).max().unwrap() as usize + 1;
            if rim != 2 * (w + h) - 8 {
                continue;
            }
            if let Some(embedding) = verify_grid(g, coords, Dim::Two, &[w, h]) {
                return Some(GridShape {
                    dims: vec![w.min(h), w.max(h)],
                    embedding,
                });
            }
        }
    }
    None
}

fn bfs(g: &Graph, s: VertexId) -> HashMap<VertexId, i64> {
    let mut dist = HashMap::from([(s, 0)]);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for w in g.neighbors(u) {
            dist.entry(w).or_insert_with(|| {
                queue.push_back(w);
                d + 1
            });
        }
    }
    dist
}

/// Finds `K <= M <= N` and an embedding if `g` is isomorphic to the 3d grid
/// `K x M x N`. Flat grids are reported with `K = 1`.
pub fn is_grid_3d(g: &Graph) -> Option<GridShape> {
    if let Some(flat) = is_grid(g) {
        let mut dims = vec![1, flat.dims[0], flat.dims[1]];
        dims.sort_unstable();
        return Some(GridShape {
            dims,
            embedding: flat.embedding.lifted(),
        });
    }
    if !g.is_connected() || g.max_degree() > 6 {
        return None;
    }
    let corners: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) == 3).collect();
    if corners.len() != 8 || g.vertices().any(|v| g.degree(v) < 3) {
        return None;
    }
    let dist: HashMap<VertexId, HashMap<VertexId, i64>> =
        corners.iter().map(|&c| (c, bfs(g, c))).collect();
    let o = corners[0];
    let others = &corners[1..];
    for i in 0..others.len() {
        for j in i + 1..others.len() {
            for k in j + 1..others.len() {
                let axes = [others[i], others[j], others[k]];
                let len: Vec<i64> = axes.iter().map(|a| dist[&o][a]).collect();
                let mut coords = BTreeMap::new();
                let mut ok = true;
                for v in g.vertices() {
                    let mut p = [0i64; 3];
                    for t in 0..3 {
                        let twice = dist[&o][&v] - dist[&axes[t]][&v] + len[t];
                        if twice % 2 != 0 || twice < 0 || twice > 2 * len[t] {
                            ok = false;
                            break;
                        }
                        p[t] = twice / 2;
                    }
                    if !ok {
                        break;
                    }
                    coords.insert(v, p);
                }
                if !ok {
                    continue;
                }
                let sides: Vec<usize> = len.iter().map(|&l| l as usize + 1).collect();
                if let Some(embedding) = verify_grid(g, coords, Dim::Three, &sides) {
                    let mut dims = sides;
                    dims.sort_unstable();
                    return Some(GridShape { dims, embedding });
                }
            }
        }
    }
    None
}
