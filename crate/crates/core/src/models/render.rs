//! Deterministic text renderings of the two models: DOT for cycle
//! graphs, SVG for polygon gluing diagrams. Byte-for-byte stable for a
//! fixed input, so outputs can be diffed and cached.

use std::fmt::Write;

use super::{CycleGraph, GluingDiagram};

/// DOT digraph of a cycle graph: `2m` signed nodes, one grey edge per
/// negative copy (labeled like the vertex rotation) and one black edge
/// per positive copy (labeled like the inverse face rotation).
pub fn cycle_graph_dot(graph: &CycleGraph, base: usize) -> String {
    let m = graph.m();
    let mut out = String::new();
    out.push_str("digraph cycle_graph {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=circle, fontsize=11];\n");
    for i in 0..m {
        let _ = writeln!(out, "  n{i}m [label=\"{}-\"];", i + base);
        let _ = writeln!(out, "  n{i}p [label=\"{}+\"];", i + base);
    }
    for i in 0..m {
        let target = graph.grey_target(i).point;
        let _ = writeln!(
            out,
            "  n{i}m -> n{target}p [color=gray50, label=\"\u{03c3}\"];"
        );
    }
    for i in 0..m {
        let target = graph.black_target(i).point;
        let _ = writeln!(
            out,
            "  n{i}p -> n{target}m [color=black, label=\"\u{03c0}\u{207b}\u{00b9}\"];"
        );
    }
    out.push_str("}\n");
    out
}

const SVG_SIZE: f64 = 440.0;
const SVG_RADIUS: f64 = 160.0;
const LABEL_RADIUS: f64 = 186.0;
const SIDE_BULGE: f64 = 26.0;

fn corner_xy(c: usize, corners: usize) -> (f64, f64) {
    let angle = std::f64::consts::TAU * (c as f64) / (corners as f64) - std::f64::consts::FRAC_PI_2;
    (
        SVG_SIZE / 2.0 + SVG_RADIUS * angle.cos(),
        SVG_SIZE / 2.0 + SVG_RADIUS * angle.sin(),
    )
}

fn fmt2(v: f64) -> String {
    format!("{v:.2}")
}

/// SVG drawing of a gluing diagram: the `2m`-gon with its black and
/// grey directed sides (drawn as outward arcs so a digon stays
/// legible), dashed chords joining glued sides, and each corner labeled
/// by its class representative.
pub fn gluing_svg(diagram: &GluingDiagram, base: usize) -> String {
    let m = diagram.m();
    let corners = 2 * m;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {side} {side}\" width=\"{side}\" height=\"{side}\">",
        side = SVG_SIZE
    );
    out.push_str(
        "  <defs>\n    <marker id=\"arrow\" viewBox=\"0 0 8 8\" refX=\"7\" refY=\"4\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">\n      <path d=\"M0,0 L8,4 L0,8 z\" fill=\"context-stroke\"/>\n    </marker>\n  </defs>\n",
    );

    // class representative of each corner, for labels
    let mut rep = vec![0usize; corners];
    for class in diagram.corner_classes() {
        for &c in class {
            rep[c] = class[0];
        }
    }

    // sides as outward-bulged quadratics; side s runs corner s -> s+1
    for s in 0..corners {
        let (x0, y0) = corner_xy(s, corners);
        let (x1, y1) = corner_xy((s + 1) % corners, corners);
        let (mx, my) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let len = ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt().max(1e-9);
        let (nx, ny) = ((y1 - y0) / len, -(x1 - x0) / len);
        let (cx, cy) = (mx + nx * SIDE_BULGE, my + ny * SIDE_BULGE);
        let black = s < m;
        let _ = writeln!(
            out,
            "  <path d=\"M {} {} Q {} {} {} {}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\" {}=\"url(#arrow)\"/>",
            fmt2(x0),
            fmt2(y0),
            fmt2(cx),
            fmt2(cy),
            fmt2(x1),
            fmt2(y1),
            if black { "#202020" } else { "#9a9a9a" },
            if black { "marker-end" } else { "marker-start" }
        );
        let label = if black {
            format!("b{}", s + base)
        } else {
            format!("g{}", corners - 1 - s + base)
        };
        let lf = 1.0 + 42.0 / SVG_RADIUS;
        let (lx, ly) = (
            SVG_SIZE / 2.0 + (mx + nx * SIDE_BULGE - SVG_SIZE / 2.0) * lf,
            SVG_SIZE / 2.0 + (my + ny * SIDE_BULGE - SVG_SIZE / 2.0) * lf,
        );
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"{}\">{}</text>",
            fmt2(lx),
            fmt2(ly),
            if black { "#202020" } else { "#9a9a9a" },
            label
        );
    }

    // dashed chords joining the midpoints of glued sides
    for i in 0..m {
        let g = corners - 1 - diagram.grey_of(i);
        let (x0, y0) = side_mid(i, corners);
        let (x1, y1) = side_mid(g, corners);
        let _ = writeln!(
            out,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#b05050\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>",
            fmt2(x0),
            fmt2(y0),
            fmt2(x1),
            fmt2(y1)
        );
    }

    // corner dots and class labels
    for (c, &class_rep) in rep.iter().enumerate() {
        let (x, y) = corner_xy(c, corners);
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#303030\"/>",
            fmt2(x),
            fmt2(y)
        );
        let angle =
            std::f64::consts::TAU * (c as f64) / (corners as f64) - std::f64::consts::FRAC_PI_2;
        let (lx, ly) = (
            SVG_SIZE / 2.0 + LABEL_RADIUS * angle.cos(),
            SVG_SIZE / 2.0 + LABEL_RADIUS * angle.sin(),
        );
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"#666666\">v{}</text>",
            fmt2(lx),
            fmt2(ly),
            class_rep
        );
    }

    out.push_str("</svg>\n");
    out
}

fn side_mid(s: usize, corners: usize) -> (f64, f64) {
    let (x0, y0) = corner_xy(s, corners);
    let (x1, y1) = corner_xy((s + 1) % corners, corners);
    ((x0 + x1) / 2.0, (y0 + y1) / 2.0)
}
