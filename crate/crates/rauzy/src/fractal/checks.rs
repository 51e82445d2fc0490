//! Set equations, measure eigenvector, area conservation, boundary convergence and the
//! decomposition of the new fractals into classical subtiles.

use super::approx::{rauzy_approx, tile_outlines, ApproxTile};
use super::hausdorff::{hausdorff_distance, sample_loops, sample_polygons};
use crate::chain::WedgeType;
use crate::dynamics::numeration::{suffix_gifs, wedge_gifs};
use crate::error::{Error, Result};
use crate::geometry::overlap;
use crate::geometry::plane::{self, Pt};
use crate::geometry::FacePolygon;
use crate::model::Model;
use serde::Serialize;
use std::collections::HashMap;

pub const AREA_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct AreaReport {
    pub ty: String,
    pub areas: Vec<f64>,
    pub max_relative_error: f64,
    pub tolerance: f64,
    pub holds: bool,
}

pub fn area_conservation(model: &Model, ty: &[u8], k_max: usize) -> AreaReport {
    let areas: Vec<f64> = (0..=k_max).map(|k| rauzy_approx(model, ty, k).area()).collect();
    let err = areas.iter().map(|a| (a - areas[0]).abs() / areas[0]).fold(0.0, f64::max);
    AreaReport { ty: crate::chain::type_label(ty), areas, max_relative_error: err, tolerance: AREA_TOL, holds: err <= AREA_TOL }
}

#[derive(Clone, Debug, Serialize)]
pub struct SetEquationReport {
    pub ty: String,
    pub level: usize,
    pub lhs_polygons: usize,
    pub rhs_polygons: usize,
    pub unmatched: usize,
    pub max_vertex_error: f64,
    /// Σ overlaps between the pieces of the right-hand side
    pub union_overlap: f64,
    pub tolerance: f64,
    pub holds: bool,
}

fn match_polygons(a: &[FacePolygon], b: &[FacePolygon], tol: f64) -> (usize, f64) {
    let cell = tol.max(1e-12) * 16.0;
    let key = |p: &FacePolygon| (p.ty.clone(), (p.origin[0] / cell).round() as i64, (p.origin[1] / cell).round() as i64);
    let mut index: HashMap<(WedgeType, i64, i64), Vec<usize>> = HashMap::new();
    for (i, p) in b.iter().enumerate() {
        index.entry(key(p)).or_default().push(i);
    }
    let mut used = vec![false; b.len()];
    let mut unmatched = 0;
    let mut worst: f64 = 0.0;
    for p in a {
        let (t, kx, ky) = key(p);
        let mut found = None;
        'search: for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(v) = index.get(&(t.clone(), kx + dx, ky + dy)) {
                    for &j in v {
                        let err = plane::norm(plane::sub(p.origin, b[j].origin))
                            .max(plane::norm(plane::sub(p.edges[0], b[j].edges[0])))
                            .max(plane::norm(plane::sub(p.edges[1], b[j].edges[1])));
                        if !used[j] && err <= tol {
                            found = Some((j, err));
                            break 'search;
                        }
                    }
                }
            }
        }
        match found {
            Some((j, e)) => {
                used[j] = true;
                worst = worst.max(e);
            }
            None => unmatched += 1,
        }
    }
    (unmatched + used.iter().filter(|u| !**u).count(), worst)
}

/// R_{k+1}(a) against ∪_{(y,b) ∈ E(0,a)} M(R_k(b) + π_c(y)), as polygon multisets.
pub fn set_equation_check(model: &Model, ty: &[u8], k: usize) -> SetEquationReport {
    let tol = 1e-9;
    let lhs = rauzy_approx(model, ty, k + 1);
    let c = model.proj.contraction_pow(1);
    let mut rhs = Vec::new();
    let mut groups = Vec::new();
    for (g, term) in model.top.image_of_type(ty).iter().enumerate() {
        let piece = rauzy_approx(model, &term.ty, k);
        let shift = plane::apply(&c, model.kc(&term.offset));
        for p in &piece.polygons {
            rhs.push(p.transformed(&c, shift));
            groups.push(g);
        }
    }
    let (unmatched, worst) = match_polygons(&lhs.polygons, &rhs, tol);
    let corners: Vec<Vec<Pt>> = rhs.iter().map(|p| p.corners()).collect();
    let ov = overlap::audit(&corners, Some(&groups), 0.0).total;
    let total = lhs.area();
    SetEquationReport {
        ty: crate::chain::type_label(ty),
        level: k,
        lhs_polygons: lhs.polygons.len(),
        rhs_polygons: rhs.len(),
        unmatched,
        max_vertex_error: worst,
        union_overlap: ov,
        tolerance: tol,
        holds: unmatched == 0 && ov <= tol * total,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MeasureReport {
    pub types: Vec<String>,
    pub areas: Vec<f64>,
    pub beta: f64,
    pub relative_residual: f64,
    pub tolerance: f64,
    pub holds: bool,
}

/// |ᵗM_{d−1}|·(areas of π_c(0, a)) = β·(areas).
pub fn measure_eigen_check(model: &Model) -> Result<MeasureReport> {
    model.require_planar()?;
    let types = model.top.types.clone();
    let areas: Vec<f64> = types
        .iter()
        .map(|t| crate::geometry::project_face(model, &crate::chain::Face::at_origin(model.n, t.clone()), 1).unwrap().area())
        .collect();
    let m = model.top.count_matrix();
    let s = types.len();
    let mut worst: f64 = 0.0;
    let norm = areas.iter().fold(0.0, |a: f64, b| a.max(*b));
    for a in 0..s {
        let lhs: f64 = (0..s).map(|b| m.get(b, a).abs() as f64 * areas[b]).sum();
        worst = worst.max((lhs - model.beta() * areas[a]).abs() / (model.beta() * norm));
    }
    Ok(MeasureReport {
        types: types.iter().map(|t| crate::chain::type_label(t)).collect(),
        areas,
        beta: model.beta(),
        relative_residual: worst,
        tolerance: AREA_TOL,
        holds: worst <= AREA_TOL,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub label: String,
    /// distances between consecutive levels (or against a fixed reference)
    pub distances: Vec<f64>,
    pub decreasing: bool,
    pub note: String,
}

/// A sequence is flagged decreasing when its last value is below its first and a least-squares
/// fit of log-distance against level has negative slope. Values below 1e-12 (levels whose
/// renormalized patch repeats exactly) are left out of the fit.
pub fn decreasing_trend(d: &[f64]) -> bool {
    if d.len() < 2 {
        return false;
    }
    let pts: Vec<(f64, f64)> = d.iter().enumerate().filter(|(_, v)| **v > 1e-12).map(|(i, v)| (i as f64, v.ln())).collect();
    if pts.len() < 2 {
        return d.last() < d.first();
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    slope < 0.0 && d.last() < d.first()
}

/// d_H(∂R_k, ∂R_{k+1}) for k < k_max, measured in eigen-coordinates.
pub fn boundary_convergence_report(model: &Model, ty: &[u8], k_max: usize) -> ConvergenceReport {
    let outline = |k: usize| {
        let loops = tile_outlines(model, ty, k);
        let h = 0.002 * loops.iter().flatten().map(|p| plane::norm(*p)).fold(1e-9, f64::max);
        let pts = sample_loops(&loops, h);
        pts.into_iter().map(|p| model.proj.eigen_coords(p)).collect::<Vec<Pt>>()
    };
    let mut distances = Vec::new();
    if k_max > 0 {
        let mut prev = outline(0);
        for k in 1..=k_max {
            let cur = outline(k);
            distances.push(hausdorff_distance(&prev, &cur).unwrap_or(f64::NAN));
            prev = cur;
        }
    }
    let decreasing = decreasing_trend(&distances);
    ConvergenceReport {
        label: crate::chain::type_label(ty),
        distances,
        decreasing,
        note: "finite-level evidence only; no convergence rate is certified".into(),
    }
}

/// Tile polygons sampled and mapped into eigen-coordinates.
pub fn tile_samples(model: &Model, tile: &ApproxTile, h: f64) -> Vec<Pt> {
    sample_polygons(&tile.polygons, h).into_iter().map(|p| model.proj.eigen_coords(p)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionIdentity {
    pub lhs: String,
    /// (letter, extra translation vector ℓ): the piece −R(letter) − π_c(ℓ)
    pub pieces: Vec<(u8, Vec<i64>)>,
}

/// The three displayed decompositions and the two further identities for the Hokkaido-type family.
pub fn decomposition_identities() -> Vec<DecompositionIdentity> {
    let e = |a: usize| {
        let mut v = vec![0i64; 5];
        v[a - 1] = 1;
        v
    };
    let sum = |a: Vec<i64>, b: Vec<i64>, s: i64| a.iter().zip(&b).map(|(x, y)| x + s * y).collect::<Vec<i64>>();
    vec![
        DecompositionIdentity { lhs: "2^3".into(), pieces: vec![(1, e(1)), (4, e(4))] },
        DecompositionIdentity { lhs: "2^4".into(), pieces: vec![(1, e(3)), (3, e(3)), (5, e(3))] },
        DecompositionIdentity { lhs: "3^4".into(), pieces: vec![(2, e(2)), (5, e(5))] },
        DecompositionIdentity { lhs: "2^5".into(), pieces: vec![(1, e(1)), (4, sum(e(4), e(2), -1))] },
        DecompositionIdentity { lhs: "3^5".into(), pieces: vec![(5, e(5)), (1, e(4))] },
    ]
}

/// The form of the 3∧5 identity that the computation supports: the stated piece −R(5) − π_c(e_5)
/// lies outside R(3∧5), while −R(4) − π_c(e_4) fills the complement of −R(1) − π_c(e_4).
pub fn corrected_identity_3_5() -> DecompositionIdentity {
    DecompositionIdentity { lhs: "3^5".into(), pieces: vec![(1, vec![0, 0, 0, 1, 0]), (4, vec![0, 0, 0, 1, 0])] }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub lhs: String,
    pub levels: Vec<usize>,
    pub distances: Vec<f64>,
    pub threshold: f64,
    pub decreasing: bool,
    pub holds: bool,
}

/// Classical subtile samples −R(a) − π_c(ℓ), built from the suffix graph: its attractor is
/// −R(a) − π_c(e_a), so the extra shift is π_c(e_a − ℓ).
pub fn reflected_subtile_cloud(model: &Model, letter: u8, shift: &[i64], depth: usize) -> Vec<Pt> {
    let g = suffix_gifs(model);
    let mut ea = vec![0i64; model.n];
    ea[letter as usize - 1] = 1;
    let d: Vec<i64> = ea.iter().zip(shift).map(|(a, b)| a - b).collect();
    let off = model.kc(&d);
    g.cloud(letter as usize - 1, depth).into_iter().map(|p| plane::add(p, off)).collect()
}

/// d_H between R_k(lhs) and the union of the stated pieces, per level; clouds at a fixed
/// deep depth stand in for the classical subtiles.
pub fn decomposition_check(model: &Model, id: &DecompositionIdentity, levels: &[usize], cloud_depth: usize) -> Result<DecompositionReport> {
    if model.n != 5 {
        return Err(Error::Family("decomposition identities need a five-letter alphabet".into()));
    }
    let lhs_ty: WedgeType = id.lhs.split('^').map(|s| s.parse().unwrap()).collect();
    let mut rhs: Vec<Pt> = Vec::new();
    for (a, l) in &id.pieces {
        rhs.extend(reflected_subtile_cloud(model, *a, l, cloud_depth).into_iter().map(|p| model.proj.eigen_coords(p)));
    }
    let mut distances = Vec::new();
    for &k in levels {
        let tile = rauzy_approx(model, &lhs_ty, k);
        let h = sample_spacing(model, &tile);
        let pts = tile_samples(model, &tile, h);
        distances.push(hausdorff_distance(&pts, &rhs)?);
    }
    let threshold = 0.05;
    let decreasing = decreasing_trend(&distances);
    let holds = distances.last().is_some_and(|d| *d < threshold) && decreasing;
    Ok(DecompositionReport { lhs: id.lhs.clone(), levels: levels.to_vec(), distances, threshold, decreasing, holds })
}

/// A fifth of the smallest polygon edge, so that interior samples are dense in each face.
pub fn sample_spacing(_model: &Model, tile: &ApproxTile) -> f64 {
    let e = tile.polygons.iter().flat_map(|p| p.edges.iter().map(|e| plane::norm(*e))).fold(f64::INFINITY, f64::min);
    (e / 5.0).max(1e-6)
}

#[derive(Clone, Debug, Serialize)]
pub struct AgreementReport {
    pub ty: String,
    pub extra_depth: usize,
    pub levels: Vec<usize>,
    pub distances: Vec<f64>,
    pub threshold: f64,
    pub decreasing: bool,
    pub holds: bool,
}

/// Wedge-suffix Dumont-Thomas cloud at depth k + extra_depth against the level-k polygons.
/// With extra_depth = 0 each cloud point is the base point of one level-k face.
pub fn two_oracle_agreement(model: &Model, ty: &[u8], levels: &[usize], extra_depth: usize) -> Result<AgreementReport> {
    let g = wedge_gifs(model);
    let st = model.top.index[ty];
    let mut distances = Vec::new();
    for &k in levels {
        let cloud: Vec<Pt> = g.cloud(st, k + extra_depth).into_iter().map(|p| model.proj.eigen_coords(p)).collect();
        let tile = rauzy_approx(model, ty, k);
        let pts = tile_samples(model, &tile, sample_spacing(model, &tile));
        distances.push(hausdorff_distance(&pts, &cloud)?);
    }
    let threshold = 0.05;
    let decreasing = decreasing_trend(&distances);
    Ok(AgreementReport {
        ty: crate::chain::type_label(ty),
        extra_depth,
        levels: levels.to_vec(),
        holds: distances.last().is_some_and(|d| *d < threshold) && decreasing,
        distances,
        threshold,
        decreasing,
    })
}
