//! Overlap and hole audits of finite tiling approximations inside a convex region.

use super::approx::approx_of_chain;
use crate::chain::{Chain, Face, WedgeType};
use crate::error::Result;
use crate::geometry::overlap;
use crate::geometry::plane::{self, Pt};
use crate::geometry::{boundary_loops, stepped_surface};
use crate::model::Model;
use serde::Serialize;

pub const TILING_TOL: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct TilingReport {
    pub polygons: usize,
    pub region_area: f64,
    /// Σ pairwise overlap areas inside the region, divided by the region area
    pub overlap_fraction: f64,
    /// uncovered area inside the region, divided by the region area
    pub hole_fraction: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Clips convex polygons to a convex region and measures overlaps and uncovered area there.
pub fn tiling_audit(polys: &[Vec<Pt>], region: &[Pt]) -> TilingReport {
    let region = plane::ccw(region);
    let rb = plane::BBox::of(&region);
    let clipped: Vec<Vec<Pt>> = crate::par::map(polys, |p| {
        if !plane::BBox::of(p).intersects(&rb) {
            return vec![];
        }
        plane::clip_convex(p, &region)
    })
    .into_iter()
    .filter(|c| c.len() >= 3 && plane::signed_area(c).abs() > 0.0)
    .collect();
    let region_area = plane::signed_area(&region).abs();
    let covered: f64 = clipped.iter().map(|c| plane::signed_area(c).abs()).sum();
    let ov = overlap::audit(&clipped, None, 0.0).total;
    let hole = (region_area - (covered - ov)).max(0.0);
    let overlap_fraction = ov / region_area;
    let hole_fraction = hole / region_area;
    TilingReport {
        polygons: clipped.len(),
        region_area,
        overlap_fraction,
        hole_fraction,
        tolerance: TILING_TOL,
        pass: overlap_fraction <= TILING_TOL && hole_fraction <= TILING_TOL,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AperiodicAudit {
    pub patch_faces: usize,
    pub level: usize,
    pub region_radius: f64,
    pub report: TilingReport,
}

/// Level-k approximation M^k π_c E^k(Γ) of the tiles over a stepped-surface patch Γ, audited on
/// the largest centred disk (a 128-gon) inside its outline.
pub fn aperiodic_tiling_audit(model: &Model, seed: &Chain, m: usize, iterations: usize, level: usize) -> Result<AperiodicAudit> {
    let patch = stepped_surface(model, seed, m, iterations)?;
    let img = model.top.apply_iter(&patch.chain, level);
    let ck = model.proj.contraction_pow(level);
    let loops: Vec<Vec<Pt>> =
        boundary_loops(model, &img).into_iter().map(|l| l.into_iter().map(|p| plane::apply(&ck, p)).collect()).collect();
    let outer = loops.iter().max_by(|a, b| plane::signed_area(a).abs().total_cmp(&plane::signed_area(b).abs()));
    let radius = outer.map_or(0.0, |o| {
        (0..o.len()).map(|i| plane::point_segment_distance([0.0, 0.0], o[i], o[(i + 1) % o.len()])).fold(f64::INFINITY, f64::min)
    });
    let polys: Vec<Vec<Pt>> = approx_of_chain(model, &patch.chain, level).iter().map(|p| p.corners()).collect();
    // inscribed 128-gon of the disk
    let region = plane::regular_polygon([0.0, 0.0], radius, 128);
    let report = tiling_audit(&polys, &region);
    Ok(AperiodicAudit { patch_faces: patch.chain.len(), level, region_radius: radius, report })
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicAudit {
    pub faces: Vec<WedgeType>,
    pub lattice_basis: Vec<Vec<i64>>,
    pub level: usize,
    pub translates: usize,
    pub report: TilingReport,
}

/// Level-k tile of P translated by π_c(Λ), audited on one fundamental parallelogram.
pub fn periodic_tiling_audit(model: &Model, faces: &[WedgeType], basis: &[Vec<i64>], level: usize) -> Result<PeriodicAudit> {
    model.require_planar()?;
    let n = model.n;
    let p = Chain::from_terms(n, 2, false, faces.iter().map(|t| (Face::at_origin(n, t.clone()), 1)));
    let tile: Vec<Vec<Pt>> = approx_of_chain(model, &p, level).iter().map(|q| q.corners()).collect();
    let v1 = model.kc(&basis[0]);
    let v2 = model.kc(&basis[1]);
    let pts: Vec<Pt> = tile.iter().flatten().copied().collect();
    let bb = plane::BBox::of(&pts);
    let centre = [(bb.min[0] + bb.max[0]) / 2.0, (bb.min[1] + bb.max[1]) / 2.0];
    let base = plane::sub(centre, plane::scale(plane::add(v1, v2), 0.5));
    let region = vec![base, plane::add(base, v1), plane::add(plane::add(base, v1), v2), plane::add(base, v2)];
    // enough translates to cover the region: tile diameter over the lattice heights
    let covol = plane::cross(v1, v2).abs();
    let h = (covol / plane::norm(v1)).min(covol / plane::norm(v2));
    let reach = ((bb.width().hypot(bb.height()) + plane::norm(v1) + plane::norm(v2)) / h).ceil() as i64 + 1;
    let mut polys = Vec::new();
    let mut translates = 0;
    let rb = plane::BBox::of(&region);
    for i in -reach..=reach {
        for j in -reach..=reach {
            let s = plane::add(plane::scale(v1, i as f64), plane::scale(v2, j as f64));
            let mut tb = bb;
            tb.min = plane::add(tb.min, s);
            tb.max = plane::add(tb.max, s);
            if !tb.intersects(&rb) {
                continue;
            }
            translates += 1;
            polys.extend(tile.iter().map(|q| q.iter().map(|&c| plane::add(c, s)).collect::<Vec<Pt>>()));
        }
    }
    let report = tiling_audit(&polys, &region);
    Ok(PeriodicAudit { faces: faces.to_vec(), lattice_basis: basis.to_vec(), level, translates, report })
}
