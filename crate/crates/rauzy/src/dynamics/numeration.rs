//! Graph-directed self-affine sets X_t = ∪ (shift + C·X_from) over the edges into t:
//! Dumont-Thomas point clouds and membership tests.

use crate::geometry::plane::{self, Pt};
use crate::model::Model;
use crate::subst::{abelianize, Substitution};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct GifsEdge {
    pub to: usize,
    pub from: usize,
    /// l(p) or l(s) of the edge label
    pub label: Vec<i64>,
    pub shift: Pt,
}

#[derive(Clone, Debug)]
pub struct Gifs {
    pub states: Vec<String>,
    pub edges: Vec<GifsEdge>,
    pub contraction: [f64; 4],
    inverse: [f64; 4],
    incoming: Vec<Vec<usize>>,
    /// X_t lies in the disk of this radius about 0
    pub radius: Vec<f64>,
    /// support values h_t(θ_j) of X_t in HULL_DIRECTIONS evenly spaced directions, padded
    support: Vec<Vec<f64>>,
    dirs: Vec<Pt>,
}

const HULL_DIRECTIONS: usize = 32;

fn direction(j: usize) -> Pt {
    let a = std::f64::consts::TAU * j as f64 / HULL_DIRECTIONS as f64;
    [a.cos(), a.sin()]
}

fn op_norm(m: &[f64; 4]) -> f64 {
    // largest singular value of a 2×2 matrix
    let a = m[0] * m[0] + m[2] * m[2];
    let b = m[0] * m[1] + m[2] * m[3];
    let c = m[1] * m[1] + m[3] * m[3];
    let t = (a + c) / 2.0;
    (t + (((a - c) / 2.0).powi(2) + b * b).sqrt()).sqrt()
}

fn mat_mul(a: &[f64; 4], b: &[f64; 4]) -> [f64; 4] {
    [a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]]
}

impl Gifs {
    pub fn new(states: Vec<String>, edges: Vec<GifsEdge>, contraction: [f64; 4]) -> Gifs {
        let c = contraction;
        let det = c[0] * c[3] - c[1] * c[2];
        let inverse = [c[3] / det, -c[1] / det, -c[2] / det, c[0] / det];
        let mut incoming = vec![Vec::new(); states.len()];
        for (i, e) in edges.iter().enumerate() {
            incoming[e.to].push(i);
        }
        let mut g = Gifs { states, edges, contraction, inverse, incoming, radius: vec![], support: vec![], dirs: (0..HULL_DIRECTIONS).map(direction).collect() };
        g.radius = g.bounding_radii();
        g.support = g.support_bounds();
        g
    }

    /// Support values from a depth-D cloud: X_t lies within ‖C^D‖·max r of the level-D points,
    /// so padding the cloud's support by that amount bounds X_t.
    fn support_bounds(&self) -> Vec<Vec<f64>> {
        let rmax = self.radius.iter().fold(0.0, |a: f64, b| a.max(*b));
        let mut depth = 0;
        let mut cp = [1.0, 0.0, 0.0, 1.0];
        while op_norm(&cp) * rmax > 0.01 * rmax && depth < 200 {
            cp = mat_mul(&cp, &self.contraction);
            depth += 1;
        }
        let pad = op_norm(&cp) * rmax * (1.0 + 1e-9) + 1e-12;
        (0..self.states.len())
            .map(|t| {
                let pts = self.cloud(t, depth);
                (0..HULL_DIRECTIONS)
                    .map(|j| {
                        let u = direction(j);
                        pts.iter().map(|p| plane::dot(*p, u)).fold(f64::NEG_INFINITY, f64::max) + pad
                    })
                    .collect()
            })
            .collect()
    }

    fn may_contain(&self, state: usize, w: Pt) -> bool {
        plane::norm(w) <= self.radius[state]
            && self.support[state].iter().zip(&self.dirs).all(|(h, u)| plane::dot(w, *u) <= *h)
    }

    /// Radii r_t with X_t ⊂ B(0, r_t), from paths of length p where ‖C^p‖ < 1.
    fn bounding_radii(&self) -> Vec<f64> {
        let s = self.states.len();
        let mut p = 1;
        let mut cp = self.contraction;
        while op_norm(&cp) >= 0.99 {
            cp = mat_mul(&cp, &self.contraction);
            p += 1;
            assert!(p < 200, "not a contraction");
        }
        let q = op_norm(&cp);
        // (end state, partial sum) of all paths of length p into each state
        let mut paths: Vec<Vec<(usize, Pt)>> = (0..s).map(|t| vec![(t, [0.0, 0.0])]).collect();
        let mut ci = [1.0, 0.0, 0.0, 1.0];
        for _ in 0..p {
            paths = paths
                .into_iter()
                .map(|v| {
                    let mut out = Vec::new();
                    for (st, acc) in v {
                        for &e in &self.incoming[st] {
                            let ed = &self.edges[e];
                            out.push((ed.from, plane::add(acc, plane::apply(&ci, ed.shift))));
                        }
                    }
                    out
                })
                .collect();
            ci = mat_mul(&ci, &self.contraction);
        }
        let mut r = vec![0.0; s];
        loop {
            let next: Vec<f64> = (0..s)
                .map(|t| paths[t].iter().map(|&(f, acc)| plane::norm(acc) + q * r[f]).fold(0.0, f64::max))
                .collect();
            let done = next.iter().zip(&r).all(|(a, b)| (a - b).abs() <= 1e-13 * (1.0 + a));
            r = next;
            if done {
                break;
            }
        }
        r.iter().map(|x| x * (1.0 + 1e-9) + 1e-12).collect()
    }

    /// All Σ_{i<depth} C^i shift_i over paths of the given length ending at `state`.
    pub fn cloud(&self, state: usize, depth: usize) -> Vec<Pt> {
        let mut level: Vec<Vec<Pt>> = vec![vec![[0.0, 0.0]]; self.states.len()];
        for _ in 0..depth {
            level = (0..self.states.len())
                .map(|t| {
                    let mut out = Vec::new();
                    for &e in &self.incoming[t] {
                        let ed = &self.edges[e];
                        out.extend(level[ed.from].iter().map(|&p| plane::add(ed.shift, plane::apply(&self.contraction, p))));
                    }
                    out
                })
                .collect();
        }
        level.swap_remove(state)
    }

    /// Whether y lies within ~‖C^depth‖·r of X_state. A false answer is certain.
    pub fn contains(&self, state: usize, y: Pt, depth: usize) -> bool {
        if !self.may_contain(state, y) {
            return false;
        }
        let mut frontier = vec![(state, y)];
        for _ in 0..depth {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for (st, z) in frontier {
                for &e in &self.incoming[st] {
                    let ed = &self.edges[e];
                    let w = plane::apply(&self.inverse, plane::sub(z, ed.shift));
                    if self.may_contain(ed.from, w) {
                        next.push((ed.from, w));
                    }
                }
            }
            if next.is_empty() {
                return false;
            }
            // coincident branches come from distinct paths reaching the same piece
            next.sort_by(|a, b| (a.0, a.1[0], a.1[1]).partial_cmp(&(b.0, b.1[0], b.1[1])).unwrap());
            next.dedup_by(|a, b| a.0 == b.0 && plane::norm(plane::sub(a.1, b.1)) < 1e-12);
            frontier = next;
        }
        true
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }
}

fn contraction_of(model: &Model) -> [f64; 4] {
    model.proj.contraction_pow(1)
}

/// Prefix graph: X_a = ∪_{σ(b) = p a s} π_c(l(p)) + C·X_b, so X_a = R(a).
pub fn prefix_gifs(model: &Model) -> Gifs {
    letter_gifs(model, &model.sub, true)
}

/// Suffix graph: X_a = ∪_{σ(b) = p a s} π_c(l(s)) + C·X_b, so X_a = −R(a) − π_c(e_a).
pub fn suffix_gifs(model: &Model) -> Gifs {
    letter_gifs(model, &model.sub, false)
}

fn letter_gifs(model: &Model, sub: &Substitution, prefix: bool) -> Gifs {
    let n = sub.n();
    let mut edges = Vec::new();
    for a in 1..=n as u8 {
        for occ in sub.occurrences(a) {
            let word = if prefix { &occ.prefix } else { &occ.suffix };
            let label = abelianize(n, word);
            let shift = model.kc(&label);
            edges.push(GifsEdge { to: a as usize - 1, from: occ.source as usize - 1, label, shift });
        }
    }
    let states = (1..=n).map(|a| a.to_string()).collect();
    Gifs::new(states, edges, contraction_of(model))
}

/// E^{d−1}-suffix graph: X_t = ∪_{(y, x) ∈ E(0, t)} π_c(M y) + C·X_x, so X_t = R(t).
pub fn wedge_gifs(model: &Model) -> Gifs {
    let mut edges = Vec::new();
    for (t, img) in model.top.images.iter().enumerate() {
        for term in img {
            let label = model.proj.m.mul_vec(&term.offset);
            let shift = model.kc(&label);
            edges.push(GifsEdge { to: t, from: model.top.index[&term.ty], label, shift });
        }
    }
    let states = model.top.types.iter().map(|t| crate::chain::type_label(t)).collect();
    Gifs::new(states, edges, contraction_of(model))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subst::families;

    #[test]
    fn prefix_cloud_contains_origin_and_members() {
        let m = Model::new(families::sigma_t(0)).unwrap();
        let g = prefix_gifs(&m);
        let c = g.cloud(0, 1);
        assert!(c.iter().any(|p| plane::norm(*p) < 1e-15));
        for depth in [5, 12] {
            for p in g.cloud(2, depth) {
                assert!(plane::norm(p) <= g.radius[2]);
            }
        }
        // points of the stepped line lie in their subtiles
        let u = m.sub.fixed_point_prefix(1, 400).unwrap();
        let mut x = vec![0i64; 5];
        for &a in &u {
            assert!(g.contains(a as usize - 1, m.kc(&x), 60));
            x[a as usize - 1] += 1;
        }
    }
}
