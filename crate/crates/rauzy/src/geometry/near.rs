//! Membership in the set of faces near the contracting plane.

use crate::algebra::{sign_of, Projection};
use crate::chain::{phi_inv_face, Face};
use crate::subst::Letter;
use crate::subst::abelianize;
use std::cmp::Ordering;

/// Sign of ⟨x, v_β⟩, decided in floating point when clearly away from 0 and exactly otherwise.
pub fn pe_sign(proj: &Projection, x: &[i64]) -> Ordering {
    let v = proj.pe(x);
    let scale: f64 = x.iter().zip(&proj.pe_scalar).map(|(&a, b)| (a as f64 * b).abs()).sum();
    if v.abs() > 1e-9 * (1.0 + scale) {
        return v.partial_cmp(&0.0).unwrap();
    }
    sign_of(&proj.pe_exact(x))
}

fn letters_vector(n: usize, ty: &[Letter]) -> Vec<i64> {
    abelianize(n, ty)
}

/// (x, a) is near when its dual (y, ā)* satisfies −π_e(l(ā)) ≤ π_e(y) < 0.
pub fn near_membership(proj: &Projection, f: &Face) -> bool {
    let n = proj.n;
    let (dual, _) = phi_inv_face(n, f);
    let la = letters_vector(n, &dual.ty);
    let shifted: Vec<i64> = dual.base.iter().zip(&la).map(|(y, l)| y + l).collect();
    pe_sign(proj, &shifted) != Ordering::Less && pe_sign(proj, &dual.base) == Ordering::Less
}

/// Near faces of the given types with base points in the box [−r, r]^n.
pub fn near_faces_in_box(proj: &Projection, types: &[Vec<Letter>], r: i64) -> Vec<Face> {
    let n = proj.n;
    let side = (2 * r + 1) as usize;
    let total = side.pow(n as u32);
    let idx: Vec<usize> = (0..total).collect();
    let per = crate::par::map(&idx, |&i| {
        let mut x = vec![0i64; n];
        let mut k = i;
        for c in x.iter_mut() {
            *c = (k % side) as i64 - r;
            k /= side;
        }
        types.iter().map(|t| Face::new(x.clone(), t.clone())).filter(|f| near_membership(proj, f)).collect::<Vec<_>>()
    });
    let mut out: Vec<Face> = per.into_iter().flatten().collect();
    out.sort();
    out
}
