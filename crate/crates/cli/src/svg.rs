//! Deterministic SVG rendering of point sets with optional edges.
//! Crossing edges are stroked distinctly.

use std::collections::HashSet;
use std::fmt::Write;

use wiener_core::geometry::Label;
use wiener_core::PointSet;

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 40.0;

fn label_fill(label: Option<Label>) -> &'static str {
    match label {
        Some(Label::Circle) => "#1f77b4",
        Some(Label::CenterCluster) => "#d62728",
        Some(Label::GadgetL) => "#2ca02c",
        Some(Label::GadgetR) => "#17becf",
        Some(Label::ClusterLeft) => "#9467bd",
        Some(Label::ClusterRight) => "#8c564b",
        Some(Label::Apex) => "#e377c2",
        Some(Label::Plain) | None => "#333333",
    }
}

/// Renders points as circles and `edges` as lines. Edge indices in
/// `crossing` get the highlight stroke.
pub fn render(ps: &PointSet, edges: &[(usize, usize)], crossing: &HashSet<usize>) -> String {
    let xs = ps.points.iter().map(|p| p.x);
    let ys = ps.points.iter().map(|p| p.y);
    let min_x = xs.clone().fold(f64::INFINITY, f64::min);
    let max_x = xs.fold(f64::NEG_INFINITY, f64::max);
    let min_y = ys.clone().fold(f64::INFINITY, f64::min);
    let max_y = ys.fold(f64::NEG_INFINITY, f64::max);
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let scale = (CANVAS - 2.0 * MARGIN) / span;
    let width = (max_x - min_x) * scale + 2.0 * MARGIN;
    let height = (max_y - min_y) * scale + 2.0 * MARGIN;
    // y grows downward in SVG
    let tx = |x: f64| MARGIN + (x - min_x) * scale;
    let ty = |y: f64| height - (MARGIN + (y - min_y) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for (idx, &(u, v)) in edges.iter().enumerate() {
        let (a, b) = (ps.points[u], ps.points[v]);
        let (stroke, width_px) = if crossing.contains(&idx) {
            ("#d62728", 2.5)
        } else {
            ("#555555", 1.5)
        };
        let _ = writeln!(
            out,
            r#"  <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{stroke}" stroke-width="{width_px}"/>"#,
            tx(a.x),
            ty(a.y),
            tx(b.x),
            ty(b.y)
        );
    }
    for (i, p) in ps.points.iter().enumerate() {
        let label = ps.labels.as_ref().map(|l| l[i]);
        let _ = writeln!(
            out,
            r#"  <circle cx="{:.3}" cy="{:.3}" r="4" fill="{}"/>"#,
            tx(p.x),
            ty(p.y),
            label_fill(label)
        );
    }
    out.push_str("</svg>\n");
    out
}
