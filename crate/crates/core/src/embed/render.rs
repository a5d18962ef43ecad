//! Text and SVG drawings of embeddings.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write;

use super::embedding::Embedding;
use super::lattice::{Dim, Point};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Pixels per lattice unit in SVG output.
pub const SVG_UNIT: i64 = 20;
/// Stroke width in SVG output.
pub const SVG_STROKE: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
    Json,
}

impl std::str::FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            "json" => Ok(RenderFormat::Json),
            other => Err(Error::Precondition(format!("unknown format {other:?}"))),
        }
    }
}

pub fn render(g: &Graph, e: &Embedding, format: RenderFormat) -> Result<String> {
    match format {
        RenderFormat::Ascii => render_ascii(g, e),
        RenderFormat::Svg => Ok(render_svg(g, e)),
        RenderFormat::Json => Ok(format!("{}\n", e.to_json())),
    }
}

/// `+` at vertices, `-` and `|` for segments, `y` growing upwards. Lattice
/// point `(x, y)` maps to column `2x`, row `2(ymax - y)`.
pub fn render_ascii(g: &Graph, e: &Embedding) -> Result<String> {
    if e.dim != Dim::Two {
        return Err(Error::Precondition("ascii output needs a 2d embedding".into()));
    }
    let e = e.normalized();
    let [w, h, _] = e.extents();
    if w == 0 {
        return Ok(String::new());
    }
    let (cols, rows) = (2 * w as usize - 1, 2 * h as usize - 1);
    let mut canvas = vec![vec![b' '; cols]; rows];
    let cell = |p: Point| ((2 * (h - 1 - p[1])) as usize, (2 * p[0]) as usize);
    for ed in g.edges() {
        let (a, b) = (e.points[&ed.0], e.points[&ed.1]);
        let (ra, ca) = cell(a);
        let (rb, cb) = cell(b);
        let (r, c) = ((ra + rb) / 2, (ca + cb) / 2);
        canvas[r][c] = if ra == rb { b'-' } else { b'|' };
    }
    for &p in e.points.values() {
        let (r, c) = cell(p);
        canvas[r][c] = b'+';
    }
    let mut out = String::new();
    for row in canvas {
        let line = String::from_utf8(row).expect("ascii canvas");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    Ok(out)
}

/// 2d embeddings are drawn as is; 3d embeddings use an oblique projection
/// with `z` shifted by half a unit per layer.
pub fn render_svg(g: &Graph, e: &Embedding) -> String {
    let e = e.normalized();
    let [w, h, d] = e.extents();
    let project = |p: Point| -> (i64, i64) {
        let x = SVG_UNIT * (p[0] + 1) + SVG_UNIT * p[2] / 2;
        let y = SVG_UNIT * (h - p[1]) + SVG_UNIT * p[2] / 2;
        (x, y)
    };
    let width = SVG_UNIT * (w + 1) + SVG_UNIT * (d.max(1) - 1) / 2;
    let height = SVG_UNIT * (h + 1) + SVG_UNIT * (d.max(1) - 1) / 2;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<g stroke="black" stroke-width="{SVG_STROKE}" stroke-linecap="round">"#
    );
    let segments: BTreeSet<(Point, Point)> = g
        .edges()
        .map(|ed| {
            let (a, b) = (e.points[&ed.0], e.points[&ed.1]);
            (a.min(b), a.max(b))
        })
        .collect();
    for (a, b) in &segments {
        let (x1, y1) = project(*a);
        let (x2, y2) = project(*b);
        let _ = writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="black">"#);
    let points: BTreeSet<Point> = e.points.values().copied().collect();
    let mut seen = HashSet::new();
    for p in points {
        let (x, y) = project(p);
        if seen.insert((x, y)) {
            let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="{}"/>"#, SVG_STROKE + 1);
        }
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, path_graph};

    fn square() -> Embedding {
        Embedding::from_points(
            Dim::Two,
            [(0, [0, 0, 0]), (1, [1, 0, 0]), (2, [1, 1, 0]), (3, [0, 1, 0])],
        )
    }

    #[test]
    fn ascii_square() {
        let text = render_ascii(&cycle_graph(4), &square()).unwrap();
        assert_eq!(text, "+-+\n| |\n+-+\n");
    }

    #[test]
    fn ascii_path_vertical() {
        let e = Embedding::from_points(Dim::Two, [(0, [0, 0, 0]), (1, [0, 1, 0]), (2, [1, 1, 0])]);
        assert_eq!(render_ascii(&path_graph(3), &e).unwrap(), "+-+\n|\n+\n");
    }

    #[test]
    fn ascii_rejects_3d() {
        let e = square().lifted();
        assert!(render_ascii(&cycle_graph(4), &e).is_err());
    }

    #[test]
    fn svg_is_deterministic() {
        let a = render_svg(&cycle_graph(4), &square());
        let b = render_svg(&cycle_graph(4), &square());
        assert_eq!(a, b);
        assert!(a.contains(r#"stroke-width="2""#));
        assert_eq!(a.matches("<line").count(), 4);
        assert_eq!(a.matches("<circle").count(), 4);
    }
}
