mod common;

use std::collections::BTreeSet;

use pgr::embed::{
    canonicalize, enumerate_embeddings, enumerate_with, render, solve, validate_embedding, Dim, Embedding, RenderFormat,
    SolveConstraints, SolveOutcome,
};
use pgr::graph::{cycle_graph, make_grid, path_graph, star_graph, Graph};
use pgr::orientation::{Axis, OrientationMap};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use common::*;

fn emb2(points: &[(usize, [i64; 2])]) -> Embedding {
    Embedding::from_points(Dim::Two, points.iter().map(|&(v, p)| (v, [p[0], p[1], 0])))
}

fn exists(g: &Graph, dim: Dim) -> Option<bool> {
    solve(g, dim, &SolveConstraints::default()).unwrap().exists()
}

#[test]
fn validation_examples() {
    let square = emb2(&[(0, [0, 0]), (1, [1, 0]), (2, [1, 1]), (3, [0, 1])]);
    assert!(validate_embedding(&cycle_graph(4), &square).unwrap());
    let far = emb2(&[(0, [0, 0]), (1, [2, 0])]);
    assert!(!validate_embedding(&path_graph(2), &far).unwrap());
    let clash = emb2(&[(0, [0, 0]), (1, [1, 0]), (2, [0, 0])]);
    assert!(!validate_embedding(&path_graph(3), &clash).unwrap());
    let missing = emb2(&[(0, [0, 0])]);
    assert!(validate_embedding(&path_graph(2), &missing).is_err());
}

#[test]
fn solve_examples() {
    assert_eq!(exists(&cycle_graph(3), Dim::Two), Some(false));
    assert_eq!(exists(&star_graph(5), Dim::Two), Some(false));
    assert_eq!(exists(&star_graph(5), Dim::Three), Some(true));
    let grid = make_grid(3, 5).unwrap();
    let out = solve(&grid, Dim::Two, &SolveConstraints::default()).unwrap();
    assert!(validate_embedding(&grid, out.embedding().unwrap()).unwrap());
}

#[test]
fn solve_errors() {
    let two = path_graph(2).disjoint_union(&path_graph(2), 2).unwrap();
    assert!(solve(&two, Dim::Two, &SolveConstraints::default()).is_err());
    let mut f = OrientationMap::new();
    f.set(0, 1, Axis::Horizontal);
    assert!(solve(&path_graph(2), Dim::Three, &SolveConstraints::with_orientation(f)).is_err());
}

#[test]
fn budget_exceeded_is_its_own_verdict() {
    let g = make_grid(6, 6).unwrap();
    let out = solve(&g, Dim::Two, &SolveConstraints::default().budget(5)).unwrap();
    assert!(matches!(out, SolveOutcome::BudgetExceeded));
    assert_eq!(out.exists(), None);
}

#[test]
fn enumeration_counts() {
    assert_eq!(enumerate_embeddings(&path_graph(2), Dim::Two, 100).unwrap().drawings.len(), 1);
    let p3 = enumerate_embeddings(&path_graph(3), Dim::Two, 100).unwrap();
    assert!(p3.complete);
    assert_eq!(p3.drawings.len(), 2);
    let c3 = enumerate_embeddings(&cycle_graph(3), Dim::Two, 100).unwrap();
    assert!(c3.complete && c3.drawings.is_empty());
}

/// Distinct shapes of a point set under the 8 symmetries of the square,
/// counted by brute force over every placement of a path.
fn path_shapes(n: usize) -> usize {
    fn walks(n: usize, at: &mut Vec<[i64; 2]>, out: &mut BTreeSet<Vec<[i64; 2]>>) {
        if at.len() == n {
            let mut best: Option<Vec<[i64; 2]>> = None;
            for sym in 0..8 {
                for rev in [false, true] {
                    let mut pts: Vec<[i64; 2]> = at
                        .iter()
                        .map(|&[x, y]| {
                            let (x, y) = if sym & 4 != 0 { (y, x) } else { (x, y) };
                            [if sym & 1 != 0 { -x } else { x }, if sym & 2 != 0 { -y } else { y }]
                        })
                        .collect();
                    if rev {
                        pts.reverse();
                    }
                    let min = [pts.iter().map(|p| p[0]).min().unwrap(), pts.iter().map(|p| p[1]).min().unwrap()];
                    let pts: Vec<[i64; 2]> = pts.iter().map(|p| [p[0] - min[0], p[1] - min[1]]).collect();
                    if best.as_ref().is_none_or(|b| pts < *b) {
                        best = Some(pts);
                    }
                }
            }
            out.insert(best.unwrap());
            return;
        }
        let last = *at.last().unwrap();
        for d in [[1, 0], [-1, 0], [0, 1], [0, -1]] {
            let p = [last[0] + d[0], last[1] + d[1]];
            if !at.contains(&p) {
                at.push(p);
                walks(n, at, out);
                at.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    walks(n, &mut vec![[0, 0]], &mut out);
    out.len()
}

#[test]
fn path_drawings_match_brute_force() {
    for n in 2..=7 {
        let e = enumerate_embeddings(&path_graph(n), Dim::Two, 100_000).unwrap();
        assert!(e.complete);
        assert_eq!(e.drawings.len(), path_shapes(n), "P{n}");
    }
}

#[test]
fn canonical_forms() {
    let square = emb2(&[(0, [0, 0]), (1, [1, 0]), (2, [1, 1]), (3, [0, 1])]);
    let moved = emb2(&[(0, [7, -3]), (1, [8, -3]), (2, [8, -2]), (3, [7, -2])]);
    let c4 = cycle_graph(4);
    assert_eq!(canonicalize(&c4, &square).unwrap(), canonicalize(&c4, &moved).unwrap());
    let p3 = path_graph(3);
    let ell = emb2(&[(0, [0, 0]), (1, [1, 0]), (2, [1, 1])]);
    let mirror = emb2(&[(0, [0, 0]), (1, [-1, 0]), (2, [-1, 1])]);
    assert_eq!(canonicalize(&p3, &ell).unwrap(), canonicalize(&p3, &mirror).unwrap());
    let straight = emb2(&[(0, [0, 0]), (1, [1, 0]), (2, [2, 0])]);
    assert_ne!(canonicalize(&p3, &ell).unwrap(), canonicalize(&p3, &straight).unwrap());
    let bad = emb2(&[(0, [0, 0]), (1, [2, 0]), (2, [2, 1])]);
    assert!(canonicalize(&p3, &bad).is_err());
}

#[test]
fn canonicalize_is_idempotent() {
    for n in 2..=6 {
        for g in connected_graphs(n) {
            let e = enumerate_embeddings(&g, Dim::Two, 1000).unwrap();
            for d in &e.drawings {
                let (h, emb) = d.to_graph_embedding();
                assert_eq!(&canonicalize(&h, &emb).unwrap(), d);
            }
        }
    }
}

#[test]
fn prefilter_never_changes_verdicts() {
    for n in 2..=8 {
        for g in connected_graphs(n) {
            for dim in [Dim::Two, Dim::Three] {
                let a = solve(&g, dim, &SolveConstraints::default()).unwrap().exists();
                let b = solve(&g, dim, &SolveConstraints::default().raw()).unwrap().exists();
                assert!(a.is_some());
                assert_eq!(a, b, "{dim:?} {:?}", g.edges().collect::<Vec<_>>());
            }
        }
    }
}

#[test]
fn enumeration_and_solve_agree_on_emptiness() {
    for n in 2..=6 {
        for g in connected_graphs(n) {
            let e = enumerate_embeddings(&g, Dim::Two, 1).unwrap();
            assert_eq!(e.drawings.is_empty(), exists(&g, Dim::Two) == Some(false));
        }
    }
}

#[test]
fn witnesses_are_valid_and_deterministic() {
    let mut r = rng(11);
    for _ in 0..200 {
        let n = r.gen_range(2..14);
        let extra = r.gen_range(0..3);
        let g = random_connected(&mut r, n, 4, extra);
        let a = solve(&g, Dim::Two, &SolveConstraints::default()).unwrap();
        let b = solve(&g, Dim::Two, &SolveConstraints::default()).unwrap();
        assert_eq!(a, b);
        if let Some(e) = a.embedding() {
            assert!(validate_embedding(&g, e).unwrap());
        }
    }
}

#[test]
fn relabelling_keeps_verdicts() {
    let mut r = rng(12);
    for _ in 0..200 {
        let n = r.gen_range(2..12);
        let extra = r.gen_range(0..4);
        let g = random_connected(&mut r, n, 4, extra);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut r);
        let h = g.relabel(|v| perm[v]);
        for dim in [Dim::Two, Dim::Three] {
            assert_eq!(exists(&g, dim), exists(&h, dim));
        }
    }
}

#[test]
fn orientation_is_respected() {
    let mut r = rng(13);
    for _ in 0..200 {
        let n = r.gen_range(2..12);
        let extra = r.gen_range(0..3);
        let g = random_connected(&mut r, n, 4, extra);
        let mut f = OrientationMap::new();
        for e in g.edges() {
            let a = match r.gen_range(0..3) {
                0 => Axis::Horizontal,
                1 => Axis::Vertical,
                _ => Axis::Undefined,
            };
            f.set(e.0, e.1, a);
        }
        let out = solve(&g, Dim::Two, &SolveConstraints::with_orientation(f.clone())).unwrap();
        if let Some(e) = out.embedding() {
            assert!(validate_embedding(&g, e).unwrap());
            for (edge, a) in f.iter() {
                let (p, q) = (e.get(edge.0).unwrap(), e.get(edge.1).unwrap());
                match a {
                    Axis::Horizontal => assert_eq!(p[1], q[1]),
                    Axis::Vertical => assert_eq!(p[0], q[0]),
                    Axis::Undefined => {}
                }
            }
        }
    }
}

#[test]
fn micro_suite_labellings_are_realizable() {
    for inst in micro_suite().into_iter().filter(|i| i.embeddable) {
        let out = solve(&inst.graph, Dim::Two, &SolveConstraints::with_orientation(inst.orientation)).unwrap();
        assert_eq!(out.exists(), Some(true), "{}", inst.name);
    }
}

#[test]
fn rendering() {
    let c4 = cycle_graph(4);
    let e = solve(&c4, Dim::Two, &SolveConstraints::default()).unwrap().embedding().unwrap().clone();
    let ascii = render(&c4, &e, RenderFormat::Ascii).unwrap();
    assert_eq!(ascii, "+-+\n| |\n+-+\n");
    assert_eq!(ascii, render(&c4, &e, RenderFormat::Ascii).unwrap());
    let svg = render(&c4, &e, RenderFormat::Svg).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("stroke-width=\"2\""));
    assert_eq!(svg, render(&c4, &e, RenderFormat::Svg).unwrap());
    let json: serde_json::Value = serde_json::from_str(&render(&c4, &e, RenderFormat::Json).unwrap()).unwrap();
    assert_eq!(json["dim"], 2);
    assert_eq!(Embedding::from_json(&json.to_string()).unwrap(), e);
    let cube = pgr::graph::hypercube(3);
    let e3 = solve(&cube, Dim::Three, &SolveConstraints::default()).unwrap().embedding().unwrap().clone();
    assert!(render(&cube, &e3, RenderFormat::Ascii).is_err());
    assert!("png".parse::<RenderFormat>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn twin_pruning_matches_enumeration(seed in any::<u64>(), n in 2usize..10, extra in 0usize..3) {
        let mut r = rng(seed);
        let g = random_connected(&mut r, n, 4, extra);
        let mut f = OrientationMap::new();
        for e in g.edges() {
            if r.gen_bool(0.5) {
                f.set(e.0, e.1, if r.gen_bool(0.5) { Axis::Horizontal } else { Axis::Vertical });
            }
        }
        let c = SolveConstraints::with_orientation(f);
        let solved = solve(&g, Dim::Two, &c).unwrap().exists();
        let all = enumerate_with(&g, Dim::Two, &c, 1).unwrap();
        prop_assert_eq!(solved, Some(!all.embeddings.is_empty()));
    }
}
