//! Hausdorff distance between finite planar point sets, with sampling helpers.

use crate::error::{Error, Result};
use crate::geometry::plane::{self, Pt};
use crate::geometry::FacePolygon;
use std::collections::HashMap;

/// Uniform-grid nearest-neighbour index.
pub struct PointGrid {
    cell: f64,
    cells: HashMap<(i64, i64), Vec<Pt>>,
    min: Pt,
    max: Pt,
    len: usize,
}

impl PointGrid {
    pub fn new(points: &[Pt]) -> PointGrid {
        let bb = plane::BBox::of(points);
        let area = (bb.width() * bb.height()).max(1e-18);
        let count = points.len().max(1) as f64;
        // nearly collinear sets would otherwise get a vanishing cell
        let extent = bb.width().max(bb.height());
        let cell = if extent < 1e-12 { 1.0 } else { ((area / count).sqrt() * 2.0).max(extent / count) };
        let mut cells: HashMap<(i64, i64), Vec<Pt>> = HashMap::new();
        for &p in points {
            cells.entry(Self::key_of(cell, p)).or_default().push(p);
        }
        PointGrid { cell, cells, min: bb.min, max: bb.max, len: points.len() }
    }

    fn key_of(cell: f64, p: Pt) -> (i64, i64) {
        ((p[0] / cell).floor() as i64, (p[1] / cell).floor() as i64)
    }

    /// Distance from q to the nearest indexed point.
    pub fn nearest(&self, q: Pt) -> f64 {
        let (cx, cy) = Self::key_of(self.cell, q);
        // distance to the bounding box bounds how far the ring search must go
        let dx = (self.min[0] - q[0]).max(q[0] - self.max[0]).max(0.0);
        let dy = (self.min[1] - q[1]).max(q[1] - self.max[1]).max(0.0);
        let start = ((dx.max(dy) / self.cell).floor() as i64 - 1).max(0);
        let span = ((self.max[0] - self.min[0]).max(self.max[1] - self.min[1]) / self.cell) as i64 + 2;
        let mut best = f64::INFINITY;
        if start.saturating_mul(8) > self.len as i64 {
            // far outside the box a ring costs more than a full scan
            return self.cells.values().flatten().map(|&p| plane::norm(plane::sub(p, q))).fold(best, f64::min);
        }
        let mut ring = start;
        loop {
            for x in cx - ring..=cx + ring {
                for y in cy - ring..=cy + ring {
                    if (x - cx).abs() != ring && (y - cy).abs() != ring {
                        continue;
                    }
                    if let Some(v) = self.cells.get(&(x, y)) {
                        for &p in v {
                            best = best.min(plane::norm(plane::sub(p, q)));
                        }
                    }
                }
            }
            // every point outside the searched square is at least ring·cell away
            if best <= ring as f64 * self.cell || ring > start + span + 2 {
                return best;
            }
            ring += 1;
        }
    }
}

pub fn directed_hausdorff(a: &[Pt], b: &PointGrid) -> f64 {
    crate::par::map(a, |&p| b.nearest(p)).into_iter().fold(0.0, f64::max)
}

pub fn hausdorff_distance(a: &[Pt], b: &[Pt]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty);
    }
    let ga = PointGrid::new(a);
    let gb = PointGrid::new(b);
    Ok(directed_hausdorff(a, &gb).max(directed_hausdorff(b, &ga)))
}

/// Boundary and interior grid points of parallelograms at spacing at most h.
pub fn sample_polygons(polys: &[FacePolygon], h: f64) -> Vec<Pt> {
    let per = crate::par::map(polys, |p| {
        let [e1, e2] = p.edges;
        let n1 = (plane::norm(e1) / h).ceil().max(1.0) as usize;
        let n2 = (plane::norm(e2) / h).ceil().max(1.0) as usize;
        let mut out = Vec::with_capacity((n1 + 1) * (n2 + 1));
        for i in 0..=n1 {
            for j in 0..=n2 {
                let s = i as f64 / n1 as f64;
                let t = j as f64 / n2 as f64;
                out.push(plane::add(p.origin, plane::add(plane::scale(e1, s), plane::scale(e2, t))));
            }
        }
        out
    });
    per.into_iter().flatten().collect()
}

/// Points along closed polylines at spacing at most h.
pub fn sample_loops(loops: &[Vec<Pt>], h: f64) -> Vec<Pt> {
    let mut out = Vec::new();
    for l in loops {
        for i in 0..l.len() {
            let (a, b) = (l[i], l[(i + 1) % l.len()]);
            let m = (plane::norm(plane::sub(b, a)) / h).ceil().max(1.0) as usize;
            for j in 0..m {
                out.push(plane::add(a, plane::scale(plane::sub(b, a), j as f64 / m as f64)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_translation() {
        let a: Vec<Pt> = (0..200).map(|i| [(i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()]).collect();
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        let v = [0.3, -0.4];
        let b: Vec<Pt> = a.iter().map(|&p| plane::add(p, v)).collect();
        let d = hausdorff_distance(&a, &b).unwrap();
        assert!(d <= 0.5 + 1e-12);
        assert!(hausdorff_distance(&a, &[]).is_err());
    }

    #[test]
    fn grid_matches_brute_force() {
        let a: Vec<Pt> = (0..500).map(|i| [(i as f64 * 1.37).sin() * 3.0, (i as f64 * 0.71).cos()]).collect();
        let g = PointGrid::new(&a);
        for k in 0..50 {
            let q = [(k as f64 * 0.9).cos() * 5.0, (k as f64 * 0.3).sin() * 2.0];
            let brute = a.iter().map(|&p| plane::norm(plane::sub(p, q))).fold(f64::INFINITY, f64::min);
            assert!((g.nearest(q) - brute).abs() < 1e-12);
        }
    }
}
