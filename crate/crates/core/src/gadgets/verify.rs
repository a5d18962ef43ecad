//! Machine checks of the properties each catalog gadget declares.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use serde::Serialize;

use super::catalog::{Gadget, VerifyMode};
use crate::embed::{enumerate_with, solve, Dim, Embedding, Enumeration, Point, SolveConstraints, SolveOutcome};
use crate::error::Result;
use crate::graph::{degree_set, Graph, VertexId};
use crate::orientation::{Axis, OrientationMap};

/// Node budget of each enumeration run by [`verify_gadget`].
pub const DEFAULT_VERIFY_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The enumeration budget ran out before the check could be decided.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    pub kind: String,
    pub mode: VerifyMode,
    pub checks: Vec<Check>,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn conclusive(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Inconclusive)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind,
            "mode": self.mode,
            "passed": self.passed(),
            "conclusive": self.conclusive(),
            "checks": self.checks,
        })
    }
}

fn check(name: &'static str, ok: bool, detail: String) -> Check {
    Check {
        name,
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        detail,
    }
}

fn inconclusive(name: &'static str, detail: String) -> Check {
    Check {
        name,
        status: CheckStatus::Inconclusive,
        detail,
    }
}

fn sorted2(a: [usize; 2]) -> [usize; 2] {
    [a[0].min(a[1]), a[0].max(a[1])]
}

fn extents2(e: &Embedding) -> [usize; 2] {
    let x = e.extents();
    sorted2([x[0] as usize, x[1] as usize])
}

fn fits(e: [usize; 2], bound: [usize; 2]) -> bool {
    let b = sorted2(bound);
    e[0] <= b[0] && e[1] <= b[1]
}

/// Circular order of `ids` around the centre of the bounding box, rotated to
/// start at the first id and read in whichever direction makes the second
/// entry smaller, so mirror images compare equal.
fn circular_order(e: &Embedding, ids: &[VertexId]) -> Vec<usize> {
    let (lo, hi) = e.bounding_box().expect("non-empty embedding");
    let cx = (lo[0] + hi[0]) as f64 / 2.0;
    let cy = (lo[1] + hi[1]) as f64 / 2.0;
    let mut by_angle: Vec<(f64, usize)> = ids
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let p = e.get(*v).expect("interconnector placed");
            let a = (p[1] as f64 - cy).atan2(p[0] as f64 - cx);
            (if a < 0.0 { a + 2.0 * PI } else { a }, k)
        })
        .collect();
    by_angle.sort_by(|a, b| a.0.total_cmp(&b.0));
    let order: Vec<usize> = by_angle.into_iter().map(|(_, k)| k).collect();
    let start = order.iter().position(|&k| k == 0).unwrap_or(0);
    let forward: Vec<usize> = (0..order.len()).map(|i| order[(start + i) % order.len()]).collect();
    let backward: Vec<usize> = (0..order.len())
        .map(|i| order[(start + order.len() - i) % order.len()])
        .collect();
    forward.min(backward)
}

fn has_exposed_neighbour(e: &Embedding, v: VertexId) -> bool {
    let (lo, hi) = e.bounding_box().expect("non-empty embedding");
    let occupied: BTreeSet<Point> = e.points.values().copied().collect();
    let p = e.get(v).expect("interconnector placed");
    Dim::Two.directions().iter().any(|d| {
        let q = [p[0] + d[0], p[1] + d[1], 0];
        let outside = q[0] < lo[0] || q[0] > hi[0] || q[1] < lo[1] || q[1] > hi[1];
        outside && !occupied.contains(&q)
    })
}

fn constraints(mode: VerifyMode, orientation: OrientationMap, budget: u64) -> SolveConstraints {
    match mode {
        VerifyMode::Oriented => SolveConstraints::with_orientation(orientation).budget(budget),
        _ => SolveConstraints::default().budget(budget),
    }
}

fn enumerate(g: &Graph, c: &SolveConstraints) -> Result<Enumeration> {
    enumerate_with(g, Dim::Two, c, usize::MAX)
}

/// Runs every check the catalog entry declares with the default budget.
pub fn verify_gadget(g: &Gadget) -> Result<GadgetReport> {
    verify_gadget_with(g, DEFAULT_VERIFY_BUDGET)
}

/// Like [`verify_gadget`] with a node budget per enumeration.
pub fn verify_gadget_with(g: &Gadget, budget: u64) -> Result<GadgetReport> {
    let mut checks = Vec::new();

    let ds = degree_set(&g.graph)?;
    checks.push(check(
        "degree-set",
        ds.is_subset(&g.required_degree_set),
        format!("{ds} within {}", g.required_degree_set),
    ));

    let c = constraints(g.mode, g.orientation(), budget);
    let en = enumerate(&g.graph, &c)?;
    let scope = match g.mode {
        VerifyMode::Oriented => "respecting the known orientation",
        _ => "unconstrained",
    };
    if !en.complete {
        let detail = format!("enumeration budget of {budget} nodes exceeded after {} drawings", en.drawings.len());
        for name in ["drawings", "footprint", "exposure", "circular-order"] {
            checks.push(inconclusive(name, detail.clone()));
        }
    } else {
        let count = en.drawings.len();
        checks.push(match g.drawings {
            Some(want) => check("drawings", count == want, format!("{count} drawings {scope}, expected {want}")),
            None => check("drawings", count > 0, format!("{count} drawings {scope}")),
        });

        let boxes: BTreeSet<[usize; 2]> = en.embeddings.iter().map(extents2).collect();
        checks.push(check(
            "footprint",
            boxes.iter().all(|b| fits(*b, g.footprint)),
            format!("extents {boxes:?} within {}x{}", g.footprint[0], g.footprint[1]),
        ));

        let ids: Vec<VertexId> = g.interconnectors.iter().map(|i| i.id).collect();
        let exposed = en
            .embeddings
            .iter()
            .filter(|e| ids.iter().all(|&v| has_exposed_neighbour(e, v)))
            .count();
        let total = en.embeddings.len();
        let ok = if g.mode == VerifyMode::Robust {
            exposed > 0
        } else {
            exposed == total
        };
        checks.push(check(
            "exposure",
            ok,
            format!("{exposed} of {total} labelled embeddings expose every interconnector beyond the bounding box"),
        ));

        if g.mode != VerifyMode::Robust {
            let orders: BTreeSet<Vec<usize>> = en.embeddings.iter().map(|e| circular_order(e, &ids)).collect();
            checks.push(check(
                "circular-order",
                orders.len() == 1,
                format!("{} distinct circular orders", orders.len()),
            ));
        }
    }

    if g.mode == VerifyMode::Robust {
        checks.push(robust_permutations(g, budget)?);
    }
    if let Some(pf) = g.pair_footprint {
        checks.push(pair_check(g, pf, budget)?);
    }

    Ok(GadgetReport {
        kind: g.kind.name().to_string(),
        mode: g.mode,
        checks,
    })
}

/// The gadget with a probe vertex on every interconnector, standing for the
/// external edge.
fn activated(g: &Gadget) -> (Graph, Vec<VertexId>) {
    let mut a = g.graph.clone();
    let probes = g
        .interconnectors
        .iter()
        .map(|i| {
            let p = a.push_vertex();
            a.add_edge(i.id, p).expect("fresh vertex");
            p
        })
        .collect();
    (a, probes)
}

/// Every circular order of four interconnectors is realized. Up to mirror
/// images the order is fixed by which pairs sit opposite, so each of the
/// three pairings is requested through axis labels on the path from the
/// centre to each interconnector, with all external edges present.
fn robust_permutations(g: &Gadget, budget: u64) -> Result<Check> {
    let name = "all-circular-orders";
    let ids: Vec<VertexId> = g.interconnectors.iter().map(|i| i.id).collect();
    if ids.len() != 4 {
        return Ok(check(name, false, format!("{} interconnectors, expected 4", ids.len())));
    }
    let centre = g
        .graph
        .vertices()
        .max_by_key(|&v| g.graph.degree(v))
        .expect("non-empty gadget");
    let (a, probes) = activated(g);
    let mut realized = BTreeSet::new();
    for partner in 1..4 {
        let horizontal = [0, partner];
        let mut f = OrientationMap::new();
        for (k, &i) in ids.iter().enumerate() {
            let axis = if horizontal.contains(&k) { Axis::Horizontal } else { Axis::Vertical };
            let Some(path) = shortest_path(&a, centre, probes[k]) else {
                return Ok(check(name, false, format!("interconnector {i} is not connected to the centre")));
            };
            for w in path.windows(2) {
                f.set(w[0], w[1], axis);
            }
        }
        let c = SolveConstraints::with_orientation(f).budget(budget);
        match solve(&a, Dim::Two, &c)? {
            SolveOutcome::Found(e) => {
                realized.insert(circular_order(&e, &ids));
            }
            SolveOutcome::NotFound => {}
            SolveOutcome::BudgetExceeded => {
                return Ok(inconclusive(name, format!("budget exceeded for pairing 0-{partner}")));
            }
        }
    }
    Ok(check(
        name,
        realized.len() == 3,
        format!("{} of 3 circular orders realized with all interconnectors active", realized.len()),
    ))
}

fn shortest_path(g: &Graph, s: VertexId, t: VertexId) -> Option<Vec<VertexId>> {
    let mut prev = std::collections::BTreeMap::from([(s, s)]);
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == t {
            let mut path = vec![t];
            let mut cur = t;
            while cur != s {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbors(u) {
            if let std::collections::btree_map::Entry::Vacant(slot) = prev.entry(w) {
                slot.insert(u);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Two linked copies, for every pair of interconnectors, each active
/// interconnector with its plug, under the composed orientation: every
/// embedding fits `pf` and some embedding spans it exactly.
fn pair_check(g: &Gadget, pf: [usize; 2], budget: u64) -> Result<Check> {
    let name = "pair-footprint";
    let n = g.vertex_count();
    let base = g.orientation();
    let mut boxes = BTreeSet::new();
    let mut cases = 0;
    for ia in &g.interconnectors {
        for ib in &g.interconnectors {
            let link = ia.axis;
            let rotated = ib.axis != link;
            let mut p = g.graph.disjoint_union(&g.graph, n)?;
            let mut f = OrientationMap::new();
            for (e, a) in base.iter() {
                f.set(e.0, e.1, a);
                f.set(n + e.0, n + e.1, if rotated { a.flip() } else { a });
            }
            let (u, v) = (ia.id, n + ib.id);
            p.add_edge(u, v)?;
            f.set(u, v, link);
            for end in [u, v] {
                let plug = p.push_vertex();
                p.add_edge(end, plug)?;
                f.set(end, plug, link.flip());
            }
            let c = SolveConstraints::with_orientation(f).budget(budget);
            let en = enumerate(&p, &c)?;
            if !en.complete {
                return Ok(inconclusive(name, format!("budget exceeded on pair {}-{}", ia.label, ib.label)));
            }
            if en.embeddings.is_empty() {
                return Ok(check(name, false, format!("pair {}-{} has no embedding", ia.label, ib.label)));
            }
            boxes.extend(en.embeddings.iter().map(extents2));
            cases += 1;
        }
    }
    let want = sorted2(pf);
    Ok(check(
        name,
        boxes.iter().all(|b| fits(*b, want)) && boxes.contains(&want),
        format!(
            "{cases} linked pairs under the composed orientation, extents {boxes:?}, required {}x{}",
            pf[0], pf[1]
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::catalog::GadgetKind;

    #[test]
    fn square_passes() {
        let r = verify_gadget(Gadget::catalog(GadgetKind::Square)).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn tiny_budget_is_inconclusive_not_failed() {
        let r = verify_gadget_with(Gadget::catalog(GadgetKind::DoubleLadder), 10).unwrap();
        assert!(!r.conclusive());
        assert_eq!(r.check("drawings").unwrap().status, CheckStatus::Inconclusive);
    }
}
