//! Integer lattice points and the axis-preserving symmetry group.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = [i64; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn from_usize(d: usize) -> Result<Dim> {
        match d {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            other => Err(Error::InvalidDimension(other)),
        }
    }

    pub fn get(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    /// Lattice degree: 4 in the plane, 6 in space.
    pub fn max_degree(self) -> usize {
        2 * self.get()
    }

    /// Unit steps: `+x, -x, +y, -y[, +z, -z]`. Direction `d` lies on axis `d / 2`.
    pub fn directions(self) -> &'static [Point] {
        const DIRS: [Point; 6] = [
            [1, 0, 0],
            [-1, 0, 0],
            [0, 1, 0],
            [0, -1, 0],
            [0, 0, 1],
            [0, 0, -1],
        ];
        &DIRS[..self.max_degree()]
    }
}

pub fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn manhattan(a: Point, b: Point) -> i64 {
    (a[0] - b[0]).abs() + (a[1] - b[1]).abs() + (a[2] - b[2]).abs()
}

/// Index into `Dim::directions` of the unit step `b - a`, if it is one.
pub fn direction_index(a: Point, b: Point) -> Option<usize> {
    let d = sub(b, a);
    match d {
        [1, 0, 0] => Some(0),
        [-1, 0, 0] => Some(1),
        [0, 1, 0] => Some(2),
        [0, -1, 0] => Some(3),
        [0, 0, 1] => Some(4),
        [0, 0, -1] => Some(5),
        _ => None,
    }
}

/// A signed axis permutation: `apply(p)[i] = sign[i] * p[perm[i]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Symmetry {
    pub perm: [usize; 3],
    pub sign: [i64; 3],
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        perm: [0, 1, 2],
        sign: [1, 1, 1],
    };

    pub fn apply(&self, p: Point) -> Point {
        [
            self.sign[0] * p[self.perm[0]],
            self.sign[1] * p[self.perm[1]],
            self.sign[2] * p[self.perm[2]],
        ]
    }

    pub fn keeps_axes(&self) -> bool {
        self.perm == [0, 1, 2]
    }
}

/// All 8 (2d) or 48 (3d) lattice symmetries fixing the origin, identity first.
pub fn symmetry_group(dim: Dim) -> Vec<Symmetry> {
    let perms: &[[usize; 3]] = match dim {
        Dim::Two => &[[0, 1, 2], [1, 0, 2]],
        Dim::Three => &[
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ],
    };
    let zs: &[i64] = match dim {
        Dim::Two => &[1],
        Dim::Three => &[1, -1],
    };
    let mut out = Vec::new();
    for &perm in perms {
        for &sz in zs {
            for sy in [1, -1] {
                for sx in [1, -1] {
                    out.push(Symmetry {
                        perm,
                        sign: [sx, sy, sz],
                    });
                }
            }
        }
    }
    out
}
