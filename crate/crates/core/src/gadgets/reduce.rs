//! Reductions from NAE-3SAT to partial grid recognition for restricted
//! degree sets, as chains of substitutions on the extended skeleton.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::catalog::{Gadget, GadgetKind};
use super::square::{square_orientation, square_substitution};
use super::substitute::{
    compose_orientation, double_ladder_substitution, strictify, strictify_axis, three_plug_substitution,
    utree_substitution, SubstitutionMap,
};
use crate::error::{Error, Result};
use crate::formula::NaeFormula;
use crate::graph::{DegreeSet, Graph};
use crate::orientation::OrientationMap;
use crate::skeleton::{build_extended_skeleton, consistent_orientation, ExtendedSkeleton};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ReduceTarget {
    #[serde(rename = "124-tree")]
    Tree124,
    #[serde(rename = "123-tree")]
    Tree123,
    #[serde(rename = "13-tree")]
    Tree13,
    #[serde(rename = "strict-binary")]
    StrictBinary,
    #[serde(rename = "23-graph")]
    Graph23,
    #[serde(rename = "24-graph")]
    Graph24,
}

impl ReduceTarget {
    pub const ALL: [ReduceTarget; 6] = [
        ReduceTarget::Tree124,
        ReduceTarget::Tree123,
        ReduceTarget::Tree13,
        ReduceTarget::StrictBinary,
        ReduceTarget::Graph23,
        ReduceTarget::Graph24,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ReduceTarget::Tree124 => "124-tree",
            ReduceTarget::Tree123 => "123-tree",
            ReduceTarget::Tree13 => "13-tree",
            ReduceTarget::StrictBinary => "strict-binary",
            ReduceTarget::Graph23 => "23-graph",
            ReduceTarget::Graph24 => "24-graph",
        }
    }

    /// Degrees the output may have.
    pub fn degree_set(self) -> DegreeSet {
        let d: &[usize] = match self {
            ReduceTarget::Tree124 => &[1, 2, 4],
            ReduceTarget::Tree123 => &[1, 2, 3],
            ReduceTarget::Tree13 => &[1, 3],
            ReduceTarget::StrictBinary => &[1, 2, 3],
            ReduceTarget::Graph23 => &[2, 3],
            ReduceTarget::Graph24 => &[2, 4],
        };
        DegreeSet::new(d.iter().copied()).expect("valid degrees")
    }

    /// Whether the output is a tree.
    pub fn is_tree(self) -> bool {
        !matches!(self, ReduceTarget::Graph23 | ReduceTarget::Graph24)
    }
}

impl fmt::Display for ReduceTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.tag())
    }
}

impl FromStr for ReduceTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReduceTarget::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| {
                let tags: Vec<&str> = ReduceTarget::ALL.iter().map(|t| t.tag()).collect();
                Error::Precondition(format!("unknown target {s:?}, expected one of {}", tags.join(", ")))
            })
    }
}

/// Output of [`reduce`]: the graph, a consistent orientation for it, and the
/// intermediate stages. The orientation is complete except for the 24-graph,
/// where the squares of vertices with edges on both axes stay undefined.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub target: ReduceTarget,
    pub graph: Graph,
    pub orientation: OrientationMap,
    pub skeleton: ExtendedSkeleton,
    /// Substitution maps in the order they were applied.
    pub stages: Vec<SubstitutionMap>,
}

/// One substitution stage with its composed orientation.
fn stage(
    g: &Graph,
    f: &OrientationMap,
    kind: GadgetKind,
) -> Result<(Graph, OrientationMap, SubstitutionMap)> {
    let (out, m) = match kind {
        GadgetKind::UTree => utree_substitution(g, f)?,
        GadgetKind::ThreePlug => three_plug_substitution(g, f)?,
        GadgetKind::DoubleLadder => double_ladder_substitution(g, f)?,
        GadgetKind::Square => {
            let (q, m) = square_substitution(g, f)?;
            let o = square_orientation(&q, &m)?;
            return Ok((q, o, m));
        }
        GadgetKind::Windmill => {
            return Err(Error::Gadget("the windmill takes no orientation".into()));
        }
    };
    let o = compose_orientation(&Gadget::catalog(kind).orientation(), f, &m)?;
    o.check_against(&out, true)?;
    Ok((out, o, m))
}

pub fn reduce(phi: &NaeFormula, target: ReduceTarget) -> Result<Reduction> {
    let skeleton = build_extended_skeleton(phi);
    let f = consistent_orientation(&skeleton)?;
    reduce_skeleton(skeleton, f, target)
}

/// Runs the substitution chain of `target` on a skeleton and its orientation.
pub fn reduce_skeleton(skeleton: ExtendedSkeleton, f: OrientationMap, target: ReduceTarget) -> Result<Reduction> {
    let chain: &[GadgetKind] = match target {
        ReduceTarget::Tree124 => &[],
        ReduceTarget::Tree123 => &[GadgetKind::UTree],
        ReduceTarget::Tree13 | ReduceTarget::StrictBinary => &[GadgetKind::UTree, GadgetKind::ThreePlug],
        ReduceTarget::Graph23 => &[GadgetKind::DoubleLadder],
        ReduceTarget::Graph24 => &[GadgetKind::Square],
    };
    let mut g = skeleton.graph.clone();
    let mut o = f;
    let mut stages = Vec::new();
    for &kind in chain {
        let (next, next_o, m) = stage(&g, &o, kind)?;
        g = next;
        o = next_o;
        stages.push(m);
    }
    if target == ReduceTarget::StrictBinary {
        let m = stages.last().expect("three-plug stage ran");
        let (t, e) = strictify(&g, m)?;
        o.set(e.0, e.1, strictify_axis(m));
        g = t;
    }
    Ok(Reduction {
        target,
        graph: g,
        orientation: o,
        skeleton,
        stages,
    })
}
