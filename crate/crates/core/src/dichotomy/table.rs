//! The complexity tables by degree set, stored as data.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::embed::Dim;
use crate::error::{Error, Result};
use crate::graph::DegreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Complexity {
    Polynomial,
    NpComplete,
    Open,
    NoSuchInput,
}

impl Complexity {
    fn token(self) -> &'static str {
        match self {
            Complexity::Polynomial => "P",
            Complexity::NpComplete => "NPC",
            Complexity::Open => "?",
            Complexity::NoSuchInput => "---",
        }
    }
}

/// Why a cell holds its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Settled directly (a base case).
    Base,
    /// Follows from a base case by the superset or subset property.
    Derived,
    /// Bhatt and Cosmadakis, for arbitrary {1,2,4}-trees.
    BhattCosmadakis,
    /// Gregori, for binary trees.
    Gregori,
    /// Lifted from the plane through the prism.
    Prism,
    /// Lifted through the prism with pendant leaves.
    HairyPrism,
    /// No known result.
    Unknown,
}

impl Source {
    pub fn tag(self) -> &'static str {
        match self {
            Source::Base => "base",
            Source::Derived => "derived",
            Source::BhattCosmadakis => "bhatt-cosmadakis",
            Source::Gregori => "gregori",
            Source::Prism => "prism",
            Source::HairyPrism => "hairy-prism",
            Source::Unknown => "open",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AppliesTo {
    Graphs,
    Trees,
    Both,
}

/// One table cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub complexity: Complexity,
    pub source: Source,
    /// Printed in bold in the original table.
    pub base: bool,
}

const fn cell(complexity: Complexity, source: Source, base: bool) -> Cell {
    Cell {
        complexity,
        source,
        base,
    }
}

use Complexity::{NoSuchInput as NONE, NpComplete as NPC, Open as OPEN, Polynomial as POLY};

const P: Cell = cell(POLY, Source::Derived, false);
const PB: Cell = cell(POLY, Source::Base, true);
const N: Cell = cell(NPC, Source::Derived, false);
const NB: Cell = cell(NPC, Source::Base, true);
const DASH: Cell = cell(NONE, Source::Derived, false);
const Q: Cell = cell(OPEN, Source::Unknown, false);
const N1: Cell = cell(NPC, Source::Prism, false);
const N1B: Cell = cell(NPC, Source::Prism, true);
const N2: Cell = cell(NPC, Source::HairyPrism, false);
const N2B: Cell = cell(NPC, Source::HairyPrism, true);
const BC: Cell = cell(NPC, Source::BhattCosmadakis, false);
const BCB: Cell = cell(NPC, Source::BhattCosmadakis, true);
const GR: Cell = cell(NPC, Source::Gregori, false);
const GRB: Cell = cell(NPC, Source::Gregori, true);

/// Planar table: `(degree mask, D-graphs, D-trees)`, bit `d - 1` for degree `d`,
/// in the row order of the original table.
pub const PLANAR_TABLE: [(u32, Cell, Cell); 15] = [
    (0b0001, P, P),
    (0b0010, P, DASH),
    (0b0100, P, DASH),
    (0b1000, P, DASH),
    (0b0011, PB, P),
    (0b0101, N, NB),
    (0b1001, PB, P),
    (0b0110, NB, DASH),
    (0b1010, NB, DASH),
    (0b1100, PB, DASH),
    (0b0111, GR, GRB),
    (0b1011, BC, BCB),
    (0b1101, N, N),
    (0b1110, N, DASH),
    (0b1111, BC, BC),
];

/// Row labels of the spatial table: subsets of {1,2,3}, as masks.
pub const SPATIAL_ROWS: [u32; 8] = [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];
/// Column labels of the spatial table: subsets of {4,5,6}, as masks over bit `d - 1`.
pub const SPATIAL_COLS: [u32; 8] = [
    0,
    0b001 << 3,
    0b010 << 3,
    0b100 << 3,
    0b011 << 3,
    0b101 << 3,
    0b110 << 3,
    0b111 << 3,
];

/// Spatial table for D-graphs, `SPATIAL_TABLE[row][col]`.
pub const SPATIAL_TABLE: [[Cell; 8]; 8] = [
    [DASH, P, P, P, P, P, P, PB],
    [P, Q, Q, PB, N2B, N2B, Q, N2],
    [P, N1B, Q, Q, N1, N1, Q, N1],
    [Q, N1B, N1B, Q, N1, N1, N1, N1],
    [PB, N1, N2B, Q, N1, N1, N2, N1],
    [Q, N1, N1, N2B, N1, N1, N1, N1],
    [Q, N1, N1, Q, N1, N1, N1, N1],
    [Q, N1, N1, N2, N1, N1, N1, N1],
];

/// Classification of one degree set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyClass {
    pub complexity: Complexity,
    pub source: Source,
    pub applies_to: AppliesTo,
    /// The tree column of the planar table, when it exists.
    pub trees: Option<Complexity>,
    pub base: bool,
}

impl DichotomyClass {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "complexity": self.complexity,
            "source": self.source.tag(),
            "applies_to": self.applies_to,
        })
    }
}

fn planar_cells(mask: u32) -> (Cell, Cell) {
    let (_, g, t) = PLANAR_TABLE
        .iter()
        .find(|(m, _, _)| *m == mask)
        .expect("every non-empty subset of {1,2,3,4} has a row");
    (*g, *t)
}

/// Spatial cell for a mask over degrees 1..=6.
pub fn spatial_cell(mask: u32) -> Cell {
    let row = SPATIAL_ROWS.iter().position(|&r| r == mask & 0b111).unwrap();
    let col = SPATIAL_COLS.iter().position(|&c| c == mask & 0b111_000).unwrap();
    SPATIAL_TABLE[row][col]
}

/// Looks up the cell of `d` in the table for `dim`.
pub fn classify(d: &DegreeSet, dim: Dim) -> Result<DichotomyClass> {
    let limit = dim.max_degree();
    if d.is_empty() {
        return Err(Error::InvalidDegreeSet("empty degree set".into()));
    }
    if d.largest().unwrap() > limit {
        return Err(Error::InvalidDegreeSet(format!(
            "{d} has a degree above {limit}, no {}d partial grid has such a vertex",
            dim.get()
        )));
    }
    match dim {
        Dim::Two => {
            let (g, t) = planar_cells(d.mask());
            let trees = (t.complexity != Complexity::NoSuchInput).then_some(t.complexity);
            let applies_to = match trees {
                Some(c) if c == g.complexity => AppliesTo::Both,
                _ => AppliesTo::Graphs,
            };
            let (source, base) = if t.base { (t.source, true) } else { (g.source, g.base) };
            Ok(DichotomyClass {
                complexity: g.complexity,
                source,
                applies_to,
                trees,
                base,
            })
        }
        Dim::Three => {
            let c = spatial_cell(d.mask());
            Ok(DichotomyClass {
                complexity: c.complexity,
                source: c.source,
                applies_to: AppliesTo::Graphs,
                trees: None,
                base: c.base,
            })
        }
    }
}

struct Token(Cell);

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.0;
        let mut s = c.complexity.token().to_string();
        match c.source {
            Source::Prism => s.push('1'),
            Source::HairyPrism => s.push('2'),
            _ => {}
        }
        if c.base {
            s.push('*');
        }
        match c.source {
            Source::BhattCosmadakis => s.push_str(" [BC]"),
            Source::Gregori => s.push_str(" [G]"),
            _ => {}
        }
        f.pad(&s)
    }
}

fn set_label(mask: u32) -> String {
    if mask == 0 {
        "{}".into()
    } else {
        DegreeSet::from_mask(mask).to_string()
    }
}

/// Text rendering of the planar table. `*` marks base cases, `[BC]` and `[G]`
/// the prior results of Bhatt-Cosmadakis and Gregori.
pub fn render_planar_table() -> String {
    let mut out = format!("{:<11}{:<12}{}\n", "D", "graphs", "trees");
    for (mask, g, t) in PLANAR_TABLE {
        let line = format!("{:<11}{:<12}{}", set_label(mask), Token(g), Token(t));
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Text rendering of the spatial table. Suffix `1` marks cells settled by
/// the prism, `2` by the prism with pendant leaves, `*` base cases.
pub fn render_spatial_table() -> String {
    let mut out = format!("{:<9}", "");
    for c in SPATIAL_COLS {
        out.push_str(&format!("{:<9}", set_label(c)));
    }
    let mut lines = vec![out.trim_end().to_string()];
    for (r, row) in SPATIAL_ROWS.iter().zip(SPATIAL_TABLE.iter()) {
        let mut line = format!("{:<9}", set_label(*r));
        for c in row {
            line.push_str(&format!("{:<9}", Token(*c)));
        }
        lines.push(line.trim_end().to_string());
    }
    lines.join("\n") + "\n"
}
