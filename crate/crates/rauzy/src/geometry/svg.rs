//! Deterministic SVG output for projected patches.

use super::patch::FacePolygon;
use super::plane::{BBox, Pt};
use crate::chain::{wedge_types, WedgeType};
use std::fmt::Write;

const PALETTE: [&str; 12] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
    "#86bcb6", "#d37295",
];

pub fn colour_of(n: usize, ty: &WedgeType) -> &'static str {
    let idx = wedge_types(n, ty.len()).iter().position(|t| t == ty).unwrap_or(0);
    PALETTE[idx % PALETTE.len()]
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// One filled polygon per face, optional boundary polylines drawn on top.
pub fn render(n: usize, polygons: &[FacePolygon], outlines: &[Vec<Pt>], width_px: f64) -> String {
    let corners: Vec<Vec<Pt>> = polygons.iter().map(|p| p.corners()).collect();
    let mut bb = BBox::of(&[[0.0, 0.0]]);
    for c in corners.iter().chain(outlines) {
        for &p in c {
            bb.include(p);
        }
    }
    let pad = 0.02 * bb.width().max(bb.height()).max(1e-9);
    let (w, h) = (bb.width() + 2.0 * pad, bb.height() + 2.0 * pad);
    let stroke = 0.002 * w.max(h);
    let mut s = String::new();
    // y axis flipped so that K_c is drawn with the usual orientation
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        fmt(width_px),
        fmt(width_px * h / w),
        fmt(bb.min[0] - pad),
        fmt(-bb.max[1] - pad),
        fmt(w),
        fmt(h)
    );
    for (p, c) in polygons.iter().zip(&corners) {
        let pts: Vec<String> = c.iter().map(|q| format!("{},{}", fmt(q[0]), fmt(-q[1]))).collect();
        let _ = writeln!(
            s,
            r#"<polygon points="{}" fill="{}" stroke="black" stroke-width="{}"/>"#,
            pts.join(" "),
            colour_of(n, &p.ty),
            fmt(stroke * 0.5)
        );
    }
    for o in outlines {
        let mut pts: Vec<String> = o.iter().map(|q| format!("{},{}", fmt(q[0]), fmt(-q[1]))).collect();
        if let Some(f) = pts.first().cloned() {
            pts.push(f);
        }
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="black" stroke-width="{}"/>"#, pts.join(" "), fmt(stroke * 2.0));
    }
    s.push_str("</svg>\n");
    s
}
