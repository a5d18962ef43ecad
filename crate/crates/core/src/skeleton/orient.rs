//! Consistent orientation of an extended skeleton, step by step.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{flag_edges, holds_connectors, spinal_paths, without_edges, ExtendedSkeleton};
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::orientation::{Axis, OrientationMap};

/// The pseudocode line that assigned an edge its final label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Step {
    /// 7.1: main spinal cord, horizontal.
    MainCord,
    /// 8.1.1: transversal spinal cords, vertical.
    TransversalCord,
    /// 9.1: edges at degree-2 skeleton vertices, vertical.
    Connector,
    /// 10.1.1: two horizontal edges already present, vertical.
    TwoHorizontalPresent,
    /// 10.2.1: fewer than two horizontal edges, horizontal.
    FewerThanTwoHorizontal,
    /// 11.1: flags, horizontal.
    Flag,
}

impl Step {
    pub fn line(self) -> &'static str {
        match self {
            Step::MainCord => "7.1",
            Step::TransversalCord => "8.1.1",
            Step::Connector => "9.1",
            Step::TwoHorizontalPresent => "10.1.1",
            Step::FewerThanTwoHorizontal => "10.2.1",
            Step::Flag => "11.1",
        }
    }
}

pub fn consistent_orientation(s: &ExtendedSkeleton) -> Result<OrientationMap> {
    consistent_orientation_traced(s).map(|(f, _)| f)
}

/// The orientation together with the step that labelled each edge.
pub fn consistent_orientation_traced(s: &ExtendedSkeleton) -> Result<(OrientationMap, BTreeMap<Edge, Step>)> {
    let g = &s.graph;
    let mut trace = BTreeMap::new();
    // 1.
    let mut f = OrientationMap::undefined_for(g);
    let mut set = |f: &mut OrientationMap, e: Edge, axis: Axis, step: Step| {
        f.set(e.0, e.1, axis);
        trace.insert(e, step);
    };
    // 2.
    let flags = flag_edges(g);
    // 3.
    let z = without_edges(g, &flags);
    // 4.
    let paths = spinal_paths(&z)?;
    // 5.
    let mains: Vec<&Vec<usize>> = paths.iter().filter(|p| holds_connectors(&z, p)).collect();
    let m = match mains.as_slice() {
        [m] => (*m).clone(),
        _ => {
            return Err(Error::Skeleton(format!(
                "{} paths qualify as the main spinal cord, expected exactly one",
                mains.len()
            )))
        }
    };
    // 6.
    let t: Vec<&Vec<usize>> = paths.iter().filter(|p| **p != m).collect();
    // 7.
    for w in m.windows(2) {
        set(&mut f, Edge::new(w[0], w[1]), Axis::Horizontal, Step::MainCord);
    }
    // 8.
    for cord in &t {
        for w in cord.windows(2) {
            set(&mut f, Edge::new(w[0], w[1]), Axis::Vertical, Step::TransversalCord);
        }
    }
    // 9.
    for e in z.edges() {
        if z.degree(e.0) == 2 || z.degree(e.1) == 2 {
            set(&mut f, e, Axis::Vertical, Step::Connector);
        }
    }
    // 10.
    for e in z.edges() {
        if f.get(e.0, e.1) != Some(Axis::Undefined) {
            continue;
        }
        let Some(u) = [e.0, e.1].into_iter().find(|&u| z.degree(u) == 4) else {
            continue;
        };
        let horizontal = z
            .neighbors(u)
            .filter(|&w| f.get(u, w) == Some(Axis::Horizontal))
            .count();
        if horizontal >= 2 {
            set(&mut f, e, Axis::Vertical, Step::TwoHorizontalPresent);
        } else {
            set(&mut f, e, Axis::Horizontal, Step::FewerThanTwoHorizontal);
        }
    }
    // 11.
    for e in &flags {
        set(&mut f, *e, Axis::Horizontal, Step::Flag);
    }
    // 12.
    if let Some((e, _)) = f.iter().find(|(_, a)| *a == Axis::Undefined) {
        return Err(Error::IncompleteOrientation(e.0, e.1));
    }
    Ok((f, trace))
}
