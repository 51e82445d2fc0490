//! Renormalized level-k approximations of the Rauzy fractals.

use crate::chain::{Chain, Face, WedgeType};
use crate::geometry::plane::{self, Pt};
use crate::geometry::{project_chain, FacePolygon};
use crate::model::Model;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ApproxTile {
    pub ty: WedgeType,
    pub level: usize,
    pub polygons: Vec<FacePolygon>,
    pub base_shift: Pt,
}

impl ApproxTile {
    pub fn area(&self) -> f64 {
        self.polygons.iter().map(|p| p.area()).sum()
    }

    pub fn corners(&self) -> Vec<Vec<Pt>> {
        self.polygons.iter().map(|p| p.corners()).collect()
    }

    /// The tile under p ↦ s·p + shift for s = ±1.
    pub fn reflected(&self, s: f64, shift: Pt) -> ApproxTile {
        let m = [s, 0.0, 0.0, s];
        ApproxTile {
            ty: self.ty.clone(),
            level: self.level,
            polygons: self.polygons.iter().map(|p| p.transformed(&m, shift)).collect(),
            base_shift: plane::add(plane::scale(self.base_shift, s), shift),
        }
    }
}

/// M^k π_c of E^{d−1}(σ)^k applied to a chain, as polygons.
pub fn approx_of_chain(model: &Model, c: &Chain, k: usize) -> Vec<FacePolygon> {
    let img = model.top.apply_iter(c, k);
    let ck = model.proj.contraction_pow(k);
    let polys = project_chain(model, &img).expect("planar contracting space");
    crate::par::map(&polys, |p| p.transformed(&ck, [0.0, 0.0]))
}

/// R_k(a) = M^k π_c(E^{d−1}(σ)^k(0, a)).
pub fn rauzy_approx(model: &Model, ty: &[u8], k: usize) -> ApproxTile {
    let seed = Chain::from_face(model.n, Face::at_origin(model.n, ty.to_vec()), 1, false);
    ApproxTile { ty: ty.to_vec(), level: k, polygons: approx_of_chain(model, &seed, k), base_shift: [0.0, 0.0] }
}

/// Outer outline of a level-k tile, renormalized.
pub fn tile_outlines(model: &Model, ty: &[u8], k: usize) -> Vec<Vec<Pt>> {
    let seed = Chain::from_face(model.n, Face::at_origin(model.n, ty.to_vec()), 1, false);
    let img = model.top.apply_iter(&seed, k);
    let ck = model.proj.contraction_pow(k);
    crate::geometry::boundary_loops(model, &img)
        .into_iter()
        .map(|l| l.into_iter().map(|p| plane::apply(&ck, p)).collect())
        .collect()
}
