//! The regularity hypotheses (S1), (S2) and the combined niceness verdict.

use super::near::pe_sign;
use super::overlap;
use super::patch::{face_label, project_face, projects_well, OverlapWitness, OVERLAP_EPS};
use super::plane::{self, Pt};
use crate::algebra::HypothesisN;
use crate::chain::{complement, type_label, Chain, Face, WedgeType};
use crate::dual::{positivity_check, PositivityReport};
use crate::error::Result;
use crate::model::Model;
use crate::subst::abelianize;
use serde::Serialize;
use std::cmp::Ordering;

#[derive(Clone, Debug, Serialize)]
pub struct S1Report {
    pub holds: bool,
    /// types whose image has a coefficient other than ±1
    pub non_geometric: Vec<String>,
    /// (type, overlapping faces of its image)
    pub witnesses: Vec<(String, Vec<OverlapWitness>)>,
}

pub fn check_s1(model: &Model) -> Result<S1Report> {
    let mut non_geometric = Vec::new();
    let mut witnesses = Vec::new();
    for t in &model.top.types {
        let img = model.top.image_chain(t);
        if !img.is_geometric() {
            non_geometric.push(type_label(t));
            continue;
        }
        let pw = projects_well(model, &img, OVERLAP_EPS)?;
        if !pw.holds {
            witnesses.push((type_label(t), pw.witnesses));
        }
    }
    Ok(S1Report { holds: non_geometric.is_empty() && witnesses.is_empty(), non_geometric, witnesses })
}

#[derive(Clone, Debug, Serialize)]
pub struct S2Failure {
    pub first: String,
    pub second: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct S2Report {
    pub holds: bool,
    pub radius: f64,
    /// translation classes δ (modulo ker π) examined
    pub offsets: usize,
    /// near pairs whose sum projects well
    pub pairs_checked: usize,
    pub failures: Vec<S2Failure>,
}

/// R = 2·max ‖π_c(l(s))‖ / (1 − ‖β‖_c) over the suffix vectors appearing in the E^{d−1} tables.
pub fn s2_radius(model: &Model) -> f64 {
    let mut mx: f64 = 0.0;
    for imgs in &model.top.images {
        for term in imgs {
            // term offsets are M⁻¹ l(s)
            let ls = model.proj.m.mul_vec(&term.offset);
            mx = mx.max(plane::norm(model.kc(&ls)));
        }
    }
    // certified conjugate bound, nudged upward
    let b = (model.proj.conj_modulus_bound * (1.0 + 1e-12)).min(1.0 - 1e-12);
    2.0 * mx / (1.0 - b)
}

fn solve3(t: &[[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let det = t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1]) - t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0])
        + t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0]);
    if det.abs() < 1e-300 {
        return None;
    }
    let mut inv = [[0.0; 3]; 3];
    for (r, row) in inv.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            let (r1, r2) = ((c + 1) % 3, (c + 2) % 3);
            let (c1, c2) = ((r + 1) % 3, (r + 2) % 3);
            *v = (t[r1][c1] * t[r2][c2] - t[r1][c2] * t[r2][c1]) / det;
        }
    }
    Some(inv)
}

/// Representatives δ of the classes of π(Z^n) with ‖π_c δ‖ ≤ radius and |π_e δ| < pe_bound.
pub fn offsets_within(model: &Model, radius: f64, pe_bound: f64) -> Vec<Vec<i64>> {
    let basis = &model.proj.lattice.image_basis;
    let n = model.n;
    let cols: Vec<[f64; 3]> = basis
        .iter()
        .map(|b| {
            let k = model.kc(b);
            [model.proj.pe(b), k[0], k[1]]
        })
        .collect();
    let t = [[cols[0][0], cols[1][0], cols[2][0]], [cols[0][1], cols[1][1], cols[2][1]], [cols[0][2], cols[1][2], cols[2][2]]];
    let inv = solve3(&t).expect("projected lattice has full rank");
    let h = [pe_bound, radius, radius];
    let bound: Vec<i64> = (0..3).map(|j| (0..3).map(|i| inv[j][i].abs() * h[i]).sum::<f64>().ceil() as i64 + 1).collect();
    let mut out = Vec::new();
    for a in -bound[0]..=bound[0] {
        for b in -bound[1]..=bound[1] {
            for c in -bound[2]..=bound[2] {
                let x: Vec<i64> = (0..n).map(|r| a * basis[0][r] + b * basis[1][r] + c * basis[2][r]).collect();
                if plane::norm(model.kc(&x)) <= radius && model.proj.pe(&x).abs() < pe_bound {
                    out.push(x);
                }
            }
        }
    }
    out
}

fn polys_of(model: &Model, c: &Chain) -> Vec<Vec<Pt>> {
    c.terms().map(|(f, v)| project_face(model, f, v).expect("planar").corners()).collect()
}

/// Checks every pair (x, t1), (x+δ, t2) of near faces at K_c distance ≤ R whose sum projects well:
/// the images must share no face and their sum must project well.
pub fn check_s2(model: &Model) -> Result<S2Report> {
    model.require_planar()?;
    let n = model.n;
    let radius = s2_radius(model);
    let types: Vec<WedgeType> = model.top.types.clone();
    let window: Vec<Vec<i64>> = types.iter().map(|t| abelianize(n, &complement(n, t))).collect();
    let lmax = window.iter().map(|l| model.proj.pe(l)).fold(0.0, f64::max);
    let offsets = offsets_within(model, radius, lmax * (1.0 + 1e-9) + 1e-9);
    let zero = vec![0i64; n];
    let images: Vec<Chain> = types.iter().map(|t| model.top.image_chain(t)).collect();
    let nt = types.len();
    let jobs: Vec<(usize, usize, usize)> = (0..offsets.len())
        .flat_map(|o| (0..nt).flat_map(move |i| (0..nt).map(move |j| (o, i, j))))
        .collect();
    let res = crate::par::map(&jobs, |&(o, i, j)| -> Option<std::result::Result<(), S2Failure>> {
        let delta = &offsets[o];
        if delta == &zero && i == j {
            return None;
        }
        // π_e δ ∈ (−L(t1), L(t2))
        let lo: Vec<i64> = delta.iter().zip(&window[i]).map(|(a, b)| a + b).collect();
        let hi: Vec<i64> = window[j].iter().zip(delta).map(|(a, b)| a - b).collect();
        if pe_sign(&model.proj, &lo) != Ordering::Greater || pe_sign(&model.proj, &hi) != Ordering::Greater {
            return None;
        }
        let f1 = Face::at_origin(n, types[i].clone());
        let f2 = Face::new(delta.clone(), types[j].clone());
        let p1 = project_face(model, &f1, 1).unwrap().corners();
        let p2 = project_face(model, &f2, 1).unwrap().corners();
        let a1 = plane::signed_area(&p1).abs().min(plane::signed_area(&p2).abs());
        if plane::convex_overlap(&p1, &p2) > OVERLAP_EPS * a1 {
            return None;
        }
        let img1 = &images[i];
        let img2 = images[j].translate(&model.proj.m_inv.mul_vec(delta));
        let fail = |reason: String| S2Failure { first: face_label(&f1), second: face_label(&f2), reason };
        if let Some(f) = img1.faces().find(|f| img2.coefficient(f) != 0) {
            return Some(Err(fail(format!("images share {}", face_label(f)))));
        }
        let mut polys = polys_of(model, img1);
        let k1 = polys.len();
        polys.extend(polys_of(model, &img2));
        let groups: Vec<usize> = (0..polys.len()).map(|q| usize::from(q >= k1)).collect();
        let ov = overlap::audit(&polys, Some(&groups), OVERLAP_EPS);
        if let Some(&(_, _, a)) = ov.witnesses.first() {
            return Some(Err(fail(format!("image sum overlaps, area {a:.3e}"))));
        }
        Some(Ok(()))
    });
    let mut pairs_checked = 0;
    let mut failures = Vec::new();
    for r in res.into_iter().flatten() {
        pairs_checked += 1;
        if let Err(f) = r {
            failures.push(f);
        }
    }
    Ok(S2Report { holds: failures.is_empty(), radius, offsets: offsets.len(), pairs_checked, failures })
}

#[derive(Clone, Debug, Serialize)]
pub struct NiceReport {
    pub s1: S1Report,
    pub s2: Option<S2Report>,
    pub positivity: PositivityReport,
    pub neutral: HypothesisN,
    pub nice: bool,
}

/// (S1), (S2), (P) and (N). (S2) is skipped when (S1) already fails.
pub fn check_nice(model: &Model) -> Result<NiceReport> {
    let s1 = check_s1(model)?;
    let s2 = if s1.holds { Some(check_s2(model)?) } else { None };
    let positivity = positivity_check(&model.sub, model.nbar)?;
    let neutral = crate::algebra::check_hypothesis_n(&model.pd.g);
    let nice = s1.holds && s2.as_ref().is_some_and(|s| s.holds) && positivity.holds && neutral.holds;
    Ok(NiceReport { s1, s2, positivity, neutral, nice })
}
