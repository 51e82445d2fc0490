//! Integer chains of k-dimensional unit faces (x, a₁∧…∧a_k), boundary and Poincaré maps.

use crate::subst::Letter;
use serde::Serialize;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Sorted wedge type; letters are 1-based.
pub type WedgeType = Vec<Letter>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Face {
    pub base: Vec<i64>,
    pub ty: WedgeType,
}

impl Face {
    pub fn new(base: Vec<i64>, ty: WedgeType) -> Self {
        debug_assert!(ty.windows(2).all(|w| w[0] < w[1]), "unsorted wedge type");
        Face { base, ty }
    }

    pub fn at_origin(n: usize, ty: WedgeType) -> Self {
        Face::new(vec![0; n], ty)
    }

    pub fn dim(&self) -> usize {
        self.ty.len()
    }

    /// Corners x + Σ_{i∈S} e_{a_i}, subsets S in binary order.
    pub fn support_vertices(&self) -> Vec<Vec<i64>> {
        let k = self.ty.len();
        (0..1usize << k)
            .map(|mask| {
                let mut p = self.base.clone();
                for (i, &a) in self.ty.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        p[a as usize - 1] += 1;
                    }
                }
                p
            })
            .collect()
    }
}

/// Sort letters; `None` on a repeat, else the sorted type and the permutation sign.
pub fn wedge_normalize(letters: &[Letter]) -> Option<(WedgeType, i64)> {
    let mut v = letters.to_vec();
    let mut sign = 1;
    // insertion sort counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

pub fn type_label(ty: &[Letter]) -> String {
    if ty.is_empty() {
        return "•".into();
    }
    ty.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("^")
}

/// All sorted k-subsets of 1..n in lexicographic order (the set O_k).
pub fn wedge_types(n: usize, k: usize) -> Vec<WedgeType> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<Letter>, out: &mut Vec<WedgeType>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..=n {
            cur.push(a as Letter);
            rec(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn complement(n: usize, ty: &[Letter]) -> WedgeType {
    (1..=n as Letter).filter(|a| !ty.contains(a)).collect()
}

/// Σ_{a∈ty} e_a
pub fn type_vector(n: usize, ty: &[Letter]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &a in ty {
        v[a as usize - 1] += 1;
    }
    v
}

fn letter_sum_sign(ty: &[Letter]) -> i64 {
    if ty.iter().map(|&a| a as u64).sum::<u64>() % 2 == 0 { 1 } else { -1 }
}

/// Finite Z-combination of faces of one dimension, kept canonical: sorted types,
/// no zero coefficients. `dual` marks elements of the dual module C_k*.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Chain {
    pub n: usize,
    pub k: usize,
    pub dual: bool,
    terms: BTreeMap<Face, i64>,
}

impl Chain {
    pub fn new(n: usize, k: usize, dual: bool) -> Self {
        Chain { n, k, dual, terms: BTreeMap::new() }
    }

    pub fn from_face(n: usize, face: Face, coeff: i64, dual: bool) -> Self {
        let mut c = Chain::new(n, face.dim(), dual);
        c.add_face(face, coeff);
        c
    }

    pub fn from_terms(n: usize, k: usize, dual: bool, terms: impl IntoIterator<Item = (Face, i64)>) -> Self {
        let mut c = Chain::new(n, k, dual);
        for (f, v) in terms {
            c.add_face(f, v);
        }
        c
    }

    /// Add `coeff·(base, letters)` with letters in any order.
    pub fn add_term(&mut self, base: Vec<i64>, letters: &[Letter], coeff: i64) {
        if let Some((ty, s)) = wedge_normalize(letters) {
            self.add_face(Face { base, ty }, s * coeff);
        }
    }

    pub fn add_face(&mut self, face: Face, coeff: i64) {
        debug_assert_eq!(face.dim(), self.k);
        if coeff == 0 {
            return;
        }
        match self.terms.entry(face) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add_chain(&mut self, other: &Chain, scale: i64) {
        for (f, v) in &other.terms {
            self.add_face_scaled(f, v * scale);
        }
    }

    fn add_face_scaled(&mut self, f: &Face, coeff: i64) {
        if coeff == 0 {
            return;
        }
        if let Some(v) = self.terms.get_mut(f) {
            *v += coeff;
            if *v == 0 {
                self.terms.remove(f);
            }
        } else {
            self.terms.insert(f.clone(), coeff);
        }
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_chain(other, 1);
        c
    }

    pub fn minus(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_chain(other, -1);
        c
    }

    pub fn scaled(&self, s: i64) -> Chain {
        let mut c = Chain::new(self.n, self.k, self.dual);
        if s != 0 {
            c.terms = self.terms.iter().map(|(f, v)| (f.clone(), v * s)).collect();
        }
        c
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Face, i64)> {
        self.terms.iter().map(|(f, v)| (f, *v))
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.terms.keys()
    }

    pub fn coefficient(&self, f: &Face) -> i64 {
        self.terms.get(f).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// All coefficients ±1.
    pub fn is_geometric(&self) -> bool {
        self.terms.values().all(|v| v.abs() == 1)
    }

    pub fn translate(&self, z: &[i64]) -> Chain {
        let terms = self
            .terms
            .iter()
            .map(|(f, v)| (Face { base: f.base.iter().zip(z).map(|(a, b)| a + b).collect(), ty: f.ty.clone() }, *v));
        Chain { n: self.n, k: self.k, dual: self.dual, terms: terms.collect() }
    }

    /// The underlying face set {c}.
    pub fn support_set(&self) -> std::collections::BTreeSet<Face> {
        self.terms.keys().cloned().collect()
    }

    /// Sum of the images of each term under a linear map given on faces.
    pub fn map_linear(&self, k_out: usize, dual_out: bool, f: impl Fn(&Face) -> Chain + Sync + Send) -> Chain {
        let items: Vec<(&Face, i64)> = self.terms().collect();
        let parts = crate::par::map(&items, |(face, v)| (f(face), *v));
        let mut out = Chain::new(self.n, k_out, dual_out);
        for (c, v) in parts {
            out.add_chain(&c, v);
        }
        out
    }

    /// One term per line: `coeff (x1,...,xn) a1^a2^...`, with a trailing `*` for dual chains.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (f, v) in &self.terms {
            let base = f.base.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            let star = if self.dual { "*" } else { "" };
            let _ = writeln!(s, "{v} ({base}) {}{star}", type_label(&f.ty));
        }
        s
    }

    /// Pairing ⟨self, other⟩ of a dual chain with a primal chain.
    pub fn pair(&self, other: &Chain) -> i64 {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.terms.iter().map(|(f, v)| v * large.coefficient(f)).sum()
    }
}

/// ∂(x, a) = Σ_i (−1)^i [(x, a∖a_i) − (x + e_{a_i}, a∖a_i)], i 1-based.
pub fn boundary_face(n: usize, f: &Face) -> Chain {
    let k = f.dim();
    assert!(k >= 1, "boundary of a point");
    let mut out = Chain::new(n, k - 1, false);
    for i in 0..k {
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        let mut rest = f.ty.clone();
        let ai = rest.remove(i);
        out.add_face_scaled(&Face { base: f.base.clone(), ty: rest.clone() }, sign);
        let mut moved = f.base.clone();
        moved[ai as usize - 1] += 1;
        out.add_face_scaled(&Face { base: moved, ty: rest }, -sign);
    }
    out
}

pub fn boundary(c: &Chain) -> Chain {
    assert!(!c.dual, "boundary expects a primal chain");
    let n = c.n;
    let mut out = Chain::new(n, c.k.saturating_sub(1), false);
    for (f, v) in c.terms() {
        out.add_chain(&boundary_face(n, f), v);
    }
    out
}

/// φ_k: (x, a)* ↦ (−1)^{a₁+…+a_k} (x + Σ e_{a_i}, complement of a).
pub fn phi_face(n: usize, f: &Face) -> (Face, i64) {
    let base: Vec<i64> = f.base.iter().zip(type_vector(n, &f.ty)).map(|(a, b)| a + b).collect();
    (Face { base, ty: complement(n, &f.ty) }, letter_sum_sign(&f.ty))
}

pub fn phi_inv_face(n: usize, f: &Face) -> (Face, i64) {
    let ty = complement(n, &f.ty);
    let base: Vec<i64> = f.base.iter().zip(type_vector(n, &ty)).map(|(a, b)| a - b).collect();
    let s = letter_sum_sign(&ty);
    (Face { base, ty }, s)
}

pub fn phi(c: &Chain) -> Chain {
    assert!(c.dual, "φ expects a dual chain");
    let mut out = Chain::new(c.n, c.n - c.k, false);
    for (f, v) in c.terms() {
        let (g, s) = phi_face(c.n, f);
        out.add_face_scaled(&g, s * v);
    }
    out
}

pub fn phi_inv(c: &Chain) -> Chain {
    assert!(!c.dual, "φ⁻¹ expects a primal chain");
    let mut out = Chain::new(c.n, c.n - c.k, true);
    for (f, v) in c.terms() {
        let (g, s) = phi_inv_face(c.n, f);
        out.add_face_scaled(&g, s * v);
    }
    out
}

/// ∂* = φ⁻¹ ∘ ∂ ∘ φ on dual chains (raises the dual dimension by one).
pub fn coboundary(c: &Chain) -> Chain {
    phi_inv(&boundary(&phi(c)))
}
