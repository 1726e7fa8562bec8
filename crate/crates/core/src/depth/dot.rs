//! Graphviz output for execution digraphs and coloured geometries.

use std::fmt::Write as _;

use super::coloring::EdgeColoring;
use super::digraph::{ArcKind, ExecutionDigraph};
use crate::geometry::Geometry;

/// X-dependencies are drawn with a hollow diamond head, Z-dependencies with
/// a plain arrow head.
pub fn execution_dot(g: &ExecutionDigraph) -> String {
    let mut out = String::from("digraph execution {\n  rankdir=LR;\n");
    for v in &g.nodes {
        let _ = writeln!(out, "  {v};");
    }
    for &(a, b, kind) in &g.arcs {
        let style = match kind {
            ArcKind::Xdep => "[arrowhead=odiamond]",
            ArcKind::Zdep => "[arrowhead=normal]",
            ArcKind::Edge => "[arrowhead=none, style=dashed]",
        };
        let _ = writeln!(out, "  {a} -> {b} {style};");
    }
    out.push_str("}\n");
    out
}

/// Inputs are boxes, outputs white circles, measured vertices black; edges
/// are labelled with their preparation time step.
pub fn geometry_dot(g: &Geometry, coloring: Option<&EdgeColoring>) -> String {
    let mut out = String::from("graph geometry {\n");
    for &v in g.vertices() {
        let shape = if g.inputs.contains(&v) {
            "box"
        } else {
            "circle"
        };
        let fill = if g.outputs.contains(&v) {
            "fillcolor=white"
        } else {
            "fillcolor=black, fontcolor=white"
        };
        let _ = writeln!(out, "  {v} [shape={shape}, style=filled, {fill}];");
    }
    for e in g.edges() {
        match coloring.and_then(|c| c.color.get(e)) {
            Some(c) => {
                let _ = writeln!(out, "  {} -- {} [label=\"{c}\"];", e.lo(), e.hi());
            }
            None => {
                let _ = writeln!(out, "  {} -- {};", e.lo(), e.hi());
            }
        }
    }
    out.push_str("}\n");
    out
}
