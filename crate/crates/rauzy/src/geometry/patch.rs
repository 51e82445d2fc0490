//! Projected faces, projecting-well tests, stepped surfaces and their boundaries.

use super::overlap;
use super::plane::{self, Pt};
use crate::chain::{type_label, Chain, Face, WedgeType};
use crate::error::{Error, Result};
use crate::model::Model;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

pub const OVERLAP_EPS: f64 = 1e-9;

/// Parallelogram π_c(x) + [0,1]π_c(e_a) + [0,1]π_c(e_b) of a face (x, a∧b).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FacePolygon {
    pub origin: Pt,
    pub edges: [Pt; 2],
    pub ty: WedgeType,
    pub orientation: i64,
}

impl FacePolygon {
    /// Corners in counter-clockwise order.
    pub fn corners(&self) -> Vec<Pt> {
        let [e1, e2] = self.edges;
        let o = self.origin;
        let c = vec![o, plane::add(o, e1), plane::add(plane::add(o, e1), e2), plane::add(o, e2)];
        plane::ccw(&c)
    }

    pub fn area(&self) -> f64 {
        plane::cross(self.edges[0], self.edges[1]).abs()
    }

    /// Orientation of the projected parallelogram, combining the chain sign and the edge order.
    pub fn geometric_orientation(&self) -> i64 {
        self.orientation * plane::cross(self.edges[0], self.edges[1]).signum() as i64
    }

    pub fn transformed(&self, m: &[f64; 4], shift: Pt) -> FacePolygon {
        FacePolygon {
            origin: plane::add(plane::apply(m, self.origin), shift),
            edges: [plane::apply(m, self.edges[0]), plane::apply(m, self.edges[1])],
            ty: self.ty.clone(),
            orientation: self.orientation,
        }
    }

    pub fn centroid(&self) -> Pt {
        plane::add(self.origin, plane::scale(plane::add(self.edges[0], self.edges[1]), 0.5))
    }
}

pub fn project_face(model: &Model, face: &Face, coeff: i64) -> Result<FacePolygon> {
    model.require_planar()?;
    let [a, b] = [face.ty[0], face.ty[1]];
    Ok(FacePolygon {
        origin: model.kc(&face.base),
        edges: [model.unit_kc[a as usize - 1], model.unit_kc[b as usize - 1]],
        ty: face.ty.clone(),
        orientation: coeff.signum(),
    })
}

pub fn project_chain(model: &Model, c: &Chain) -> Result<Vec<FacePolygon>> {
    model.require_planar()?;
    Ok(c.terms().map(|(f, v)| project_face(model, f, v).expect("planar")).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapWitness {
    pub first: String,
    pub second: String,
    pub area: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectsWell {
    pub holds: bool,
    pub total_overlap: f64,
    pub tolerance: f64,
    pub witnesses: Vec<OverlapWitness>,
}

pub fn face_label(f: &Face) -> String {
    let b = f.base.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    format!("({b}) {}", type_label(&f.ty))
}

/// Distinct projected faces have pairwise overlap at most eps·(smaller area).
pub fn projects_well(model: &Model, c: &Chain, eps: f64) -> Result<ProjectsWell> {
    if let Some((_, v)) = c.terms().find(|(_, v)| v.abs() != 1) {
        return Err(Error::NotGeometric(v));
    }
    let faces: Vec<&Face> = c.faces().collect();
    let polys: Vec<Vec<Pt>> = project_chain(model, c)?.iter().map(|p| p.corners()).collect();
    let s = overlap::audit(&polys, None, eps);
    let witnesses: Vec<OverlapWitness> = s
        .witnesses
        .iter()
        .map(|&(i, j, a)| OverlapWitness { first: face_label(faces[i]), second: face_label(faces[j]), area: a })
        .collect();
    Ok(ProjectsWell { holds: witnesses.is_empty(), total_overlap: s.total, tolerance: eps, witnesses })
}

#[derive(Clone, Debug)]
pub struct Patch {
    pub chain: Chain,
    pub polygons: Vec<FacePolygon>,
    pub seed: Chain,
    pub exponent: usize,
    pub iterations: usize,
}

impl Patch {
    pub fn area(&self) -> f64 {
        self.polygons.iter().map(|p| p.area()).sum()
    }
}

fn check_seed(model: &Model, seed: &Chain) -> Result<()> {
    if let Some((_, v)) = seed.terms().find(|(_, v)| v.abs() != 1) {
        return Err(Error::NotGeometric(v));
    }
    if seed.faces().any(|f| f.base.iter().any(|&x| x != 0)) {
        return Err(Error::SeedNotAtOrigin);
    }
    let pw = projects_well(model, seed, OVERLAP_EPS)?;
    if !pw.holds {
        return Err(Error::Internal(format!("seed does not project well: {:?}", pw.witnesses)));
    }
    Ok(())
}

pub fn contains_faces(big: &Chain, small: &Chain) -> bool {
    small.faces().all(|f| big.coefficient(f) != 0)
}

/// ∪_{j≤k} {E^{mj}(U)} for a seed with {U} ⊆ {E^m(U)}.
pub fn stepped_surface(model: &Model, seed: &Chain, m: usize, k: usize) -> Result<Patch> {
    check_seed(model, seed)?;
    if m > 0 && !contains_faces(&model.top.apply_iter(seed, m), seed) {
        return Err(Error::SeedNotContained);
    }
    let mut union: std::collections::BTreeMap<Face, i64> = seed.terms().map(|(f, v)| (f.clone(), v)).collect();
    let mut cur = seed.clone();
    for _ in 0..k {
        cur = model.top.apply_iter(&cur, m);
        for (f, v) in cur.terms() {
            union.insert(f.clone(), v.signum());
        }
    }
    let chain = Chain::from_terms(model.n, model.d - 1, false, union);
    let polygons = project_chain(model, &chain)?;
    Ok(Patch { chain, polygons, seed: seed.clone(), exponent: m, iterations: k })
}

/// Edges of the union of the projected supports. Each face contributes its counter-clockwise
/// outline whatever its coefficient; edges are identified exactly through π, so shared edges
/// cancel even when their lifts to Z^n differ by a kernel vector.
pub fn boundary_segments(model: &Model, c: &Chain) -> Vec<(Pt, Pt)> {
    boundary_edges(model, c).into_iter().map(|e| (e.from, e.to)).collect()
}

#[derive(Clone, Debug)]
struct BoundaryEdge {
    from: Pt,
    to: Pt,
    from_key: Vec<i64>,
    to_key: Vec<i64>,
}

fn boundary_edges(model: &Model, c: &Chain) -> Vec<BoundaryEdge> {
    let mut acc: HashMap<(Vec<i64>, u8), (i64, Vec<i64>)> = HashMap::new();
    for f in c.faces() {
        let [a, b] = [f.ty[0], f.ty[1]];
        let cr = plane::cross(model.unit_kc[a as usize - 1], model.unit_kc[b as usize - 1]);
        let s = if cr >= 0.0 { 1 } else { -1 };
        let mut xa = f.base.clone();
        xa[a as usize - 1] += 1;
        let mut xb = f.base.clone();
        xb[b as usize - 1] += 1;
        // loop x → x+e_a → x+e_a+e_b → x+e_b → x
        for (start, letter, sign) in [(f.base.clone(), a, s), (xa, b, s), (xb, a, -s), (f.base.clone(), b, -s)] {
            let e = acc.entry((model.proj.key(&start), letter)).or_insert((0, start));
            e.0 += sign;
        }
    }
    let mut keys: Vec<_> = acc.into_iter().filter(|(_, (v, _))| *v != 0).collect();
    keys.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = Vec::new();
    for ((k, letter), (v, start)) in keys {
        let mut end = start.clone();
        end[letter as usize - 1] += 1;
        let p = model.kc(&start);
        let q = model.kc(&end);
        let ek = model.proj.key(&end);
        for _ in 0..v.abs() {
            if v > 0 {
                out.push(BoundaryEdge { from: p, to: q, from_key: k.clone(), to_key: ek.clone() });
            } else {
                out.push(BoundaryEdge { from: q, to: p, from_key: ek.clone(), to_key: k.clone() });
            }
        }
    }
    out
}

/// Closed boundary loops as point sequences.
pub fn boundary_loops(model: &Model, c: &Chain) -> Vec<Vec<Pt>> {
    let edges = boundary_edges(model, c);
    let mut by_start: HashMap<&Vec<i64>, Vec<usize>> = HashMap::new();
    for (i, e) in edges.iter().enumerate() {
        by_start.entry(&e.from_key).or_default().push(i);
    }
    let mut used = vec![false; edges.len()];
    let mut loops = Vec::new();
    for s in 0..edges.len() {
        if used[s] {
            continue;
        }
        let mut lp = Vec::new();
        let mut cur = s;
        loop {
            used[cur] = true;
            lp.push(edges[cur].from);
            // at a pinch vertex keep the same region on the left: smallest clockwise turn from
            // the reversed incoming direction
            let back = plane::sub(edges[cur].from, edges[cur].to);
            let next = by_start.get(&edges[cur].to_key).and_then(|v| {
                v.iter().copied().filter(|&j| !used[j]).min_by(|&i, &j| {
                    let cw = |k: usize| {
                        let d = plane::sub(edges[k].to, edges[k].from);
                        let a = plane::cross(d, back).atan2(plane::dot(d, back));
                        if a <= 0.0 { a + std::f64::consts::TAU } else { a }
                    };
                    cw(i).total_cmp(&cw(j))
                })
            });
            match next {
                Some(j) => cur = j,
                None => break,
            }
        }
        loops.push(lp);
    }
    loops
}

#[derive(Clone, Debug, Serialize)]
pub struct Coverage {
    /// radius of the largest disk about 0 inside the outer boundary loop
    pub covered_radius: f64,
    /// loops other than the outer one (holes or islands)
    pub inner_loops: usize,
    pub area: f64,
}

pub fn coverage(model: &Model, c: &Chain) -> Coverage {
    let loops = boundary_loops(model, c);
    let area: f64 = project_chain(model, c).map(|v| v.iter().map(|p| p.area()).sum()).unwrap_or(0.0);
    let Some((oi, outer)) =
        loops.iter().enumerate().max_by(|a, b| plane::signed_area(a.1).abs().total_cmp(&plane::signed_area(b.1).abs()))
    else {
        return Coverage { covered_radius: 0.0, inner_loops: 0, area };
    };
    let segs: Vec<(Pt, Pt)> = (0..outer.len()).map(|i| (outer[i], outer[(i + 1) % outer.len()])).collect();
    let inside = plane::winding_number([0.0, 0.0], &segs) != 0;
    let r = if inside {
        segs.iter().map(|&(a, b)| plane::point_segment_distance([0.0, 0.0], a, b)).fold(f64::INFINITY, f64::min)
    } else {
        0.0
    };
    let _ = oi;
    Coverage { covered_radius: r, inner_loops: loops.len() - 1, area }
}

#[derive(Clone, Debug, Serialize)]
pub struct SurroundReport {
    pub exponent: usize,
    pub contained: bool,
    pub min_gap: f64,
    pub surrounds: bool,
}

/// {U} ⊂ {E^m(U)} and the boundaries of the two unions keep a positive distance.
pub fn surrounds(model: &Model, seed: &Chain, m: usize) -> Result<SurroundReport> {
    check_seed(model, seed)?;
    let img = model.top.apply_iter(seed, m);
    let contained = contains_faces(&img, seed);
    let a = boundary_segments(model, seed);
    let b = boundary_segments(model, &img);
    let gaps = crate::par::map(&a, |&(p, q)| {
        b.iter().map(|&(r, s)| plane::segment_distance(p, q, r, s)).fold(f64::INFINITY, f64::min)
    });
    let min_gap = gaps.into_iter().fold(f64::INFINITY, f64::min);
    let cov = coverage(model, &img);
    let outer_ok = cov.inner_loops == 0;
    Ok(SurroundReport { exponent: m, contained, min_gap, surrounds: contained && min_gap > 1e-9 && outer_ok })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageStep {
    pub iteration: usize,
    pub faces: usize,
    pub covered_radius: f64,
    pub inner_loops: usize,
    pub covers_disk: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FinitenessReport {
    pub radius: f64,
    pub steps: Vec<CoverageStep>,
    pub surround: Option<SurroundReport>,
    pub verdict: String,
}

/// Evidence for the geometric finiteness property: growth of the covered disk about 0 and,
/// for d-touching seeds, the surround relation after 15 steps.
pub fn finiteness_probe(model: &Model, seed: &Chain, m: usize, k_max: usize, radius: f64) -> Result<FinitenessReport> {
    check_seed(model, seed)?;
    let mut steps = Vec::new();
    let mut cur = seed.clone();
    for j in 0..=k_max {
        if j > 0 {
            cur = model.top.apply_iter(&cur, m);
        }
        let cov = coverage(model, &cur);
        steps.push(CoverageStep {
            iteration: j,
            faces: cur.len(),
            covered_radius: cov.covered_radius,
            inner_loops: cov.inner_loops,
            covers_disk: cov.inner_loops == 0 && cov.covered_radius >= radius,
        });
    }
    let surround = if is_touching_element(seed, model.d) { Some(surrounds(model, seed, 15)?) } else { None };
    let covered = steps.last().is_some_and(|s| s.covers_disk);
    let verdict = match (&surround, covered) {
        (Some(s), true) if s.surrounds => "evidence of finiteness: disk covered and annulus step holds",
        (_, true) => "evidence of finiteness: disk covered",
        (_, false) => "no evidence: disk not covered",
    };
    Ok(FinitenessReport { radius, steps, surround, verdict: verdict.into() })
}

/// d faces at 0 of types a∖{a_k} for one d-letter set a.
pub fn is_touching_element(c: &Chain, d: usize) -> bool {
    if c.len() != d || c.faces().any(|f| f.base.iter().any(|&x| x != 0)) {
        return false;
    }
    let letters: BTreeSet<u8> = c.faces().flat_map(|f| f.ty.iter().copied()).collect();
    letters.len() == d && c.faces().all(|f| f.ty.len() == d - 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicElement {
    pub kind: String,
    pub faces: Vec<WedgeType>,
    pub lattice_basis: Vec<Vec<i64>>,
    /// |det| of the projected lattice basis
    pub covolume: f64,
    pub area: f64,
    /// area equals covolume and nearby translates do not overlap
    pub tiles: bool,
}

fn lattice_tiles(model: &Model, faces: &[WedgeType], basis: &[Vec<i64>]) -> (f64, f64, bool) {
    let v: Vec<Pt> = basis.iter().map(|b| model.kc(b)).collect();
    let covol = plane::cross(v[0], v[1]).abs();
    let n = model.n;
    let mut polys = Vec::new();
    let mut groups = Vec::new();
    let mut g = 0;
    for i in -2i64..=2 {
        for j in -2i64..=2 {
            let shift: Vec<i64> = (0..n).map(|r| i * basis[0][r] + j * basis[1][r]).collect();
            for t in faces {
                let f = Face::new(shift.clone(), t.clone());
                polys.push(project_face(model, &f, 1).expect("planar").corners());
                groups.push(g);
            }
            g += 1;
        }
    }
    let area: f64 = faces.iter().map(|t| project_face(model, &Face::at_origin(n, t.clone()), 1).unwrap().area()).sum();
    let ov = overlap::audit(&polys, None, OVERLAP_EPS);
    let ok = covol > 1e-12 && ((area - covol).abs() <= 1e-9 * covol) && ov.witnesses.is_empty();
    (covol, area, ok)
}

/// Single faces, touching pairs and d-touching elements at 0 that project well.
pub fn periodic_candidates(model: &Model) -> Result<Vec<PeriodicElement>> {
    model.require_planar()?;
    let n = model.n;
    let unit = |a: u8| crate::subst::unit_vector(n, a);
    let diff = |a: u8, b: u8| unit(a).iter().zip(unit(b)).map(|(x, y)| x - y).collect::<Vec<i64>>();
    let mut out = Vec::new();
    let mut push = |kind: &str, faces: Vec<WedgeType>, basis: Vec<Vec<i64>>| {
        let chain = Chain::from_terms(n, 2, false, faces.iter().map(|t| (Face::at_origin(n, t.clone()), 1)));
        if projects_well(model, &chain, OVERLAP_EPS).map(|p| p.holds).unwrap_or(false) {
            let (covolume, area, tiles) = lattice_tiles(model, &faces, &basis);
            out.push(PeriodicElement { kind: kind.into(), faces, lattice_basis: basis, covolume, area, tiles });
        }
    };
    for t in crate::chain::wedge_types(n, 2) {
        push("single", vec![t.clone()], vec![unit(t[0]), unit(t[1])]);
    }
    // touching pairs (0, b∧a) + (0, c∧a)
    for a in 1..=n as u8 {
        for b in 1..=n as u8 {
            for c in b + 1..=n as u8 {
                if a == b || a == c {
                    continue;
                }
                let t1 = crate::chain::wedge_normalize(&[b, a]).unwrap().0;
                let t2 = crate::chain::wedge_normalize(&[c, a]).unwrap().0;
                push("touching pair", vec![t1, t2], vec![diff(b, c), unit(a)]);
            }
        }
    }
    for letters in crate::chain::wedge_types(n, 3) {
        let faces: Vec<WedgeType> =
            (0..3).map(|k| letters.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect()).collect();
        let mut faces = faces;
        faces.sort();
        push("d-touching", faces, vec![diff(letters[0], letters[1]), diff(letters[0], letters[2])]);
    }
    Ok(out)
}
