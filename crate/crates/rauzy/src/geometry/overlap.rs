//! Pairwise overlap audit of convex polygons through a uniform grid.

use super::plane::{convex_overlap, BBox, Pt};
use std::collections::HashMap;

#[derive(Clone, Debug, Default)]
pub struct OverlapSummary {
    /// Σ of pairwise intersection areas
    pub total: f64,
    /// (i, j, area) for pairs whose overlap exceeds the relative tolerance
    pub witnesses: Vec<(usize, usize, f64)>,
}

/// Pairs (i, j), i < j, of polygons whose bounding boxes meet; each pair reported once.
pub fn candidate_pairs(boxes: &[BBox]) -> Vec<(usize, usize)> {
    if boxes.len() < 2 {
        return vec![];
    }
    let all = boxes.iter().fold(boxes[0], |a, b| a.merge(b));
    let cell = boxes.iter().map(|b| b.width().max(b.height())).fold(1e-9, f64::max);
    let key = |p: Pt| (((p[0] - all.min[0]) / cell).floor() as i64, ((p[1] - all.min[1]) / cell).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, b) in boxes.iter().enumerate() {
        let (x0, y0) = key(b.min);
        let (x1, y1) = key(b.max);
        for x in x0..=x1 {
            for y in y0..=y1 {
                grid.entry((x, y)).or_default().push(i);
            }
        }
    }
    let idx: Vec<usize> = (0..boxes.len()).collect();
    let per = crate::par::map(&idx, |&i| {
        let b = boxes[i];
        let (x0, y0) = key(b.min);
        let (x1, y1) = key(b.max);
        let mut out = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                for &j in &grid[&(x, y)] {
                    if j <= i || !b.intersects(&boxes[j]) {
                        continue;
                    }
                    // count the pair only in the cell holding the corner of the box intersection
                    let corner = [b.min[0].max(boxes[j].min[0]), b.min[1].max(boxes[j].min[1])];
                    if key(corner) == (x, y) {
                        out.push((i, j));
                    }
                }
            }
        }
        out
    });
    per.into_iter().flatten().collect()
}

/// Overlaps among convex counter-clockwise polygons; pairs inside one `group` are skipped
/// when groups are given.
pub fn audit(polys: &[Vec<Pt>], groups: Option<&[usize]>, rel_eps: f64) -> OverlapSummary {
    let boxes: Vec<BBox> = polys.iter().map(|p| BBox::of(p)).collect();
    let areas: Vec<f64> = polys.iter().map(|p| super::plane::signed_area(p).abs()).collect();
    let pairs: Vec<(usize, usize)> = candidate_pairs(&boxes)
        .into_iter()
        .filter(|&(i, j)| groups.is_none_or(|g| g[i] != g[j]))
        .collect();
    let res = crate::par::map(&pairs, |&(i, j)| (i, j, convex_overlap(&polys[i], &polys[j])));
    let mut s = OverlapSummary::default();
    for (i, j, a) in res {
        s.total += a;
        if a > rel_eps * areas[i].min(areas[j]) {
            s.witnesses.push((i, j, a));
        }
    }
    s.witnesses.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    s
}
