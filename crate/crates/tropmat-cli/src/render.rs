//! Deterministic renderings: SVG of the dual arrangement of a subdivision
//! of nΔ², DOT of type graphs.

use std::fmt::Write;

use tropmat::subdivision::{topes_of, MixedSubdivision};
use tropmat::types::{type_graph, NdType};
use tropmat::{Error, Result};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 60.0;

/// Draw the dual arrangement of a subdivision of `nΔ²`: one three-ray star
/// per position, apexes placed by a fixed embedding derived from the tope
/// map, optional region labels at the tope positions.  No randomness, no
/// timestamps: identical input gives identical bytes.
pub fn subdivision_svg(s: &MixedSubdivision, labels: bool) -> Result<String> {
    if s.d() != 3 {
        return Err(Error::BadDimension(s.d() as usize));
    }
    let n = s.n() as f64;
    // chart: lattice point q ↦ (q3 - q1, q2 - q3); regions of the
    // arrangement mirror the subdivision, so corners map away from their
    // sectors
    let chart = |q: &[u32]| -> (f64, f64) {
        let (q1, q2, q3) = (q[0] as f64, q[1] as f64, q[2] as f64);
        (q3 - q1, q2 - q3)
    };
    let scale = (SIZE - 2.0 * MARGIN) / (2.0 * n);
    let place = |(u, v): (f64, f64)| -> (f64, f64) {
        (SIZE / 2.0 + scale * u, SIZE / 2.0 - scale * v)
    };
    // apex of hyperplane i: average chart position of the cells whose i-th
    // summand is the full triangle (its apex region), computed from their
    // tope refinements
    let mut apexes = Vec::with_capacity(s.n());
    for i in 0..s.n() {
        let mut acc = (0.0, 0.0);
        let mut count = 0usize;
        for cell in s.maximal_cells() {
            if cell.entry(i).len() != 3 {
                continue;
            }
            for f in cell.faces() {
                if f.is_tope() {
                    let q = tropmat::realize::LatticePoint::of_tope(&f);
                    let (u, v) = chart(q.coords());
                    acc = (acc.0 + u, acc.1 + v);
                    count += 1;
                }
            }
        }
        if count == 0 {
            // no apex cell (degenerate input): fall back to the barycenter
            acc = (0.0, 0.0);
            count = 1;
        }
        apexes.push((acc.0 / count as f64, acc.1 / count as f64));
    }
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"  <rect width="{SIZE}" height="{SIZE}" fill="white"/>"#
    )
    .unwrap();
    let reach = SIZE;
    for (i, apex) in apexes.iter().enumerate() {
        let (ax, ay) = place(*apex);
        // min-plus tropical line: wall rays in chart directions (-1,-1),
        // (0,1), (1,0), drawn with the screen y-axis flipped
        let r1 = (ax - reach, ay + reach);
        let r2 = (ax, ay - reach);
        let r3 = (ax + reach, ay);
        let hue = (i * 107) % 360;
        writeln!(
            svg,
            r#"  <polyline fill="none" stroke="hsl({hue},70%,40%)" stroke-width="2" points="{:.2},{:.2} {ax:.2},{ay:.2} {:.2},{:.2} {ax:.2},{ay:.2} {:.2},{:.2}"/>"#,
            r1.0, r1.1, r2.0, r2.1, r3.0, r3.1
        )
        .unwrap();
        writeln!(
            svg,
            r#"  <circle cx="{ax:.2}" cy="{ay:.2}" r="3" fill="hsl({hue},70%,40%)"/>"#
        )
        .unwrap();
    }
    if labels {
        for (q, topes) in topes_of(s) {
            for t in topes {
                let (x, y) = place(chart(q.coords()));
                writeln!(
                    svg,
                    r#"  <text x="{x:.2}" y="{y:.2}" font-size="12" text-anchor="middle">{}</text>"#,
                    xml_escape(&t.to_string())
                )
                .unwrap();
            }
        }
    }
    writeln!(svg, "</svg>").unwrap();
    Ok(svg)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// DOT rendering of the bipartite type graph of a type.
pub fn type_graph_dot(t: &NdType) -> String {
    let g = type_graph(t);
    let mut out = String::from("graph type_graph {\n  rankdir=LR;\n");
    for i in 0..g.n {
        writeln!(out, "  N{} [shape=box];", i + 1).unwrap();
    }
    for j in 1..=g.d {
        writeln!(out, "  D{j} [shape=circle];").unwrap();
    }
    for (i, j) in &g.edges {
        writeln!(out, "  N{} -- D{};", i + 1, j).unwrap();
    }
    out.push_str("}\n");
    out
}
