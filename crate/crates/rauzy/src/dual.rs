//! k-dimensional extensions E_k, their duals E_k*, the geometric duals E^k obtained by
//! Poincaré conjugation, and the associated exterior matrices.

use crate::chain::{complement, phi, phi_inv, type_label, type_vector, wedge_normalize, wedge_types, Chain, Face, WedgeType};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::subst::{abelianize, Letter, Occurrence, Substitution};
use serde::Serialize;
use std::collections::{HashMap, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    Extension,
    Dual,
    Geometric,
}

/// Image term of a basis face at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub offset: Vec<i64>,
    pub ty: WedgeType,
    pub sign: i64,
}

/// Images of the faces (0, t), t ∈ O_k, for one of the three maps. The image of (x, t)
/// is the table entry translated by Mx (extension) or M⁻¹x (dual and geometric).
#[derive(Clone, Debug)]
pub struct DualMapTables {
    pub n: usize,
    pub k: usize,
    pub variant: Variant,
    pub types: Vec<WedgeType>,
    pub index: HashMap<WedgeType, usize>,
    pub images: Vec<Vec<Term>>,
    pub m: IntMatrix,
    pub m_inv: Option<IntMatrix>,
}

fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![vec![]];
    for l in lists {
        let mut next = Vec::with_capacity(out.len() * l.len());
        for prefix in &out {
            for x in l {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Decompositions σ(a_i) = p_i b_i s_i of each letter of `a`, as (b_i, p_i, s_i).
fn image_positions(sub: &Substitution, a: Letter) -> Vec<(Letter, Vec<Letter>, Vec<Letter>)> {
    let img = sub.image(a);
    (0..img.len()).map(|i| (img[i], img[..i].to_vec(), img[i + 1..].to_vec())).collect()
}

fn chain_to_terms(c: &Chain) -> Vec<Term> {
    c.terms().map(|(f, v)| Term { offset: f.base.clone(), ty: f.ty.clone(), sign: v }).collect()
}

/// E_k(0, a) straight from the definition.
fn extension_image(sub: &Substitution, a: &[Letter]) -> Chain {
    let n = sub.n();
    let lists: Vec<_> = a.iter().map(|&ai| image_positions(sub, ai)).collect();
    let mut c = Chain::new(n, a.len(), false);
    for combo in cartesian(&lists) {
        let letters: Vec<Letter> = combo.iter().map(|x| x.0).collect();
        let mut base = vec![0i64; n];
        for (_, p, _) in &combo {
            for (bi, v) in base.iter_mut().zip(abelianize(n, p)) {
                *bi += v;
            }
        }
        c.add_term(base, &letters, 1);
    }
    c
}

/// E_k*(0, a)* straight from the definition.
fn dual_image(sub: &Substitution, m_inv: &IntMatrix, a: &[Letter]) -> Chain {
    let n = sub.n();
    let lists: Vec<Vec<Occurrence>> = a.iter().map(|&ai| sub.occurrences(ai)).collect();
    let mut c = Chain::new(n, a.len(), true);
    for combo in cartesian(&lists) {
        let letters: Vec<Letter> = combo.iter().map(|o| o.source).collect();
        let mut lp = vec![0i64; n];
        for o in &combo {
            for (x, v) in lp.iter_mut().zip(abelianize(n, &o.prefix)) {
                *x -= v;
            }
        }
        c.add_term(m_inv.mul_vec(&lp), &letters, 1);
    }
    c
}

impl DualMapTables {
    fn assemble(sub: &Substitution, k: usize, variant: Variant, images: Vec<Vec<Term>>, m_inv: Option<IntMatrix>) -> Self {
        let types = wedge_types(sub.n(), k);
        let index = types.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        DualMapTables { n: sub.n(), k, variant, types, index, images, m: sub.incidence_matrix(), m_inv }
    }

    pub fn extension(sub: &Substitution, k: usize) -> Self {
        let images = wedge_types(sub.n(), k).iter().map(|t| chain_to_terms(&extension_image(sub, t))).collect();
        Self::assemble(sub, k, Variant::Extension, images, sub.incidence_matrix().inverse_unimodular())
    }

    pub fn dual(sub: &Substitution, k: usize) -> Result<Self> {
        let m = sub.incidence_matrix();
        let m_inv = m.inverse_unimodular().ok_or(Error::NotUnimodular(m.det()))?;
        let images = wedge_types(sub.n(), k).iter().map(|t| chain_to_terms(&dual_image(sub, &m_inv, t))).collect();
        Ok(Self::assemble(sub, k, Variant::Dual, images, Some(m_inv)))
    }

    /// E^k = φ ∘ E*_{n−k} ∘ φ⁻¹ acting on k-faces.
    pub fn geometric(sub: &Substitution, k: usize) -> Result<Self> {
        let n = sub.n();
        let dual = Self::dual(sub, n - k)?;
        let images = wedge_types(n, k)
            .iter()
            .map(|t| {
                let pre = phi_inv(&Chain::from_face(n, Face::at_origin(n, t.clone()), 1, false));
                chain_to_terms(&phi(&dual.apply(&pre)))
            })
            .collect();
        Ok(Self::assemble(sub, k, Variant::Geometric, images, dual.m_inv.clone()))
    }

    pub fn image_of_type(&self, t: &[Letter]) -> &[Term] {
        &self.images[self.index[t]]
    }

    /// Image of (0, t) as a chain.
    pub fn image_chain(&self, t: &[Letter]) -> Chain {
        let mut c = Chain::new(self.n, self.k, self.variant == Variant::Dual);
        for term in self.image_of_type(t) {
            c.add_face(Face::new(term.offset.clone(), term.ty.clone()), term.sign);
        }
        c
    }

    fn base_map(&self, x: &[i64]) -> Vec<i64> {
        match self.variant {
            Variant::Extension => self.m.mul_vec(x),
            _ => self.m_inv.as_ref().expect("unimodular").mul_vec(x),
        }
    }

    /// Image of a single face with its coefficient, as (face, coefficient) pairs.
    pub fn apply_face(&self, f: &Face, coeff: i64) -> Vec<(Face, i64)> {
        let tx = self.base_map(&f.base);
        self.image_of_type(&f.ty)
            .iter()
            .map(|t| {
                let base = tx.iter().zip(&t.offset).map(|(a, b)| a + b).collect();
                (Face { base, ty: t.ty.clone() }, t.sign * coeff)
            })
            .collect()
    }

    pub fn apply(&self, c: &Chain) -> Chain {
        assert_eq!(c.k, self.k, "dimension mismatch");
        let items: Vec<(&Face, i64)> = c.terms().collect();
        let parts = crate::par::map(&items, |(f, v)| self.apply_face(f, *v));
        let mut out = Chain::new(self.n, self.k, self.variant == Variant::Dual);
        for part in parts {
            for (f, v) in part {
                out.add_face(f, v);
            }
        }
        out
    }

    pub fn apply_iter(&self, c: &Chain, times: usize) -> Chain {
        (0..times).fold(c.clone(), |acc, _| self.apply(&acc))
    }

    /// Signed type counts: entry (row b, column a) = Σ signs of type-b faces in the image of (0, a).
    pub fn count_matrix(&self) -> IntMatrix {
        let s = self.types.len();
        let mut m = IntMatrix::zeros(s, s);
        for (a, img) in self.images.iter().enumerate() {
            for t in img {
                let b = self.index[&t.ty];
                m.set(b, a, m.get(b, a) + t.sign);
            }
        }
        m
    }

    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (t, img) in self.types.iter().zip(&self.images) {
            s.push_str(&format!("(0,{}) ->", type_label(t)));
            for term in img {
                let base = term.offset.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                s.push_str(&format!(" {:+}({base}){}", term.sign, type_label(&term.ty)));
            }
            s.push('\n');
        }
        s
    }
}

/// Closed form for E^{d−1} on (x, a*): Σ over tuples b with σ(b_i) = p_i a_i s_i of
/// sgn·(−1)^{a+b}(M⁻¹(x + l(s)), b*). Kept apart from the conjugation route as an oracle.
pub fn closed_form_top(sub: &Substitution, m_inv: &IntMatrix, x: &[i64], a: &[Letter]) -> Chain {
    let n = sub.n();
    let parity = |t: &[Letter]| t.iter().map(|&v| v as i64).sum::<i64>();
    let lists: Vec<Vec<Occurrence>> = a.iter().map(|&ai| sub.occurrences(ai)).collect();
    let mut c = Chain::new(n, n - a.len(), false);
    for combo in cartesian(&lists) {
        let letters: Vec<Letter> = combo.iter().map(|o| o.source).collect();
        let Some((b, sg)) = wedge_normalize(&letters) else { continue };
        let mut y = x.to_vec();
        for o in &combo {
            for (yi, v) in y.iter_mut().zip(abelianize(n, &o.suffix)) {
                *yi += v;
            }
        }
        let sign = sg * if (parity(a) + parity(&b)) % 2 == 0 { 1 } else { -1 };
        c.add_face(Face::new(m_inv.mul_vec(&y), complement(n, &b)), sign);
    }
    c
}

/// k×k minors of M (rows and columns indexed by O_k in lexicographic order).
pub fn exterior_power(m: &IntMatrix, k: usize) -> IntMatrix {
    let types = wedge_types(m.rows, k);
    let s = types.len();
    let mut out = IntMatrix::zeros(s, s);
    let idx = |t: &WedgeType| t.iter().map(|&a| a as usize - 1).collect::<Vec<_>>();
    for (i, b) in types.iter().enumerate() {
        for (j, a) in types.iter().enumerate() {
            out.set(i, j, if k == 0 { 1 } else { m.select(&idx(b), &idx(a)).det() });
        }
    }
    out
}

pub const MAX_EXTERIOR_N: usize = 12;

#[derive(Clone, Debug, Serialize)]
pub struct ExteriorMatrices {
    pub k: usize,
    /// ∧^k M
    pub b_k: IntMatrix,
    /// counts of E_k*
    pub m_k_star: IntMatrix,
    /// counts of E^{n−k}, rows/columns ordered like O_k
    pub m_geom: IntMatrix,
    pub transpose_relation: bool,
    pub sign_relation: bool,
    /// diagonal ±1 with M_k* = N⁻¹ M_{n−k} N
    pub conjugator: Option<Vec<i64>>,
}

/// Solve n_b n_a = ratio_{ba} over nonzero entries by two-colouring.
fn diagonal_conjugator(target: &IntMatrix, source: &IntMatrix) -> Option<Vec<i64>> {
    let s = target.rows;
    let mut adj: Vec<Vec<(usize, i64)>> = vec![vec![]; s];
    for b in 0..s {
        for a in 0..s {
            let (t, m) = (target.get(b, a), source.get(b, a));
            if t == 0 && m == 0 {
                continue;
            }
            if t.abs() != m.abs() {
                return None;
            }
            let r = t / m;
            if a == b && r != 1 {
                return None;
            }
            adj[a].push((b, r));
            adj[b].push((a, r));
        }
    }
    two_colour(&adj)
}

/// Assign ±1 to vertices so that colour(u)·colour(v) = label on each edge.
pub fn two_colour(adj: &[Vec<(usize, i64)>]) -> Option<Vec<i64>> {
    let s = adj.len();
    let mut col = vec![0i64; s];
    for start in 0..s {
        if col[start] != 0 {
            continue;
        }
        col[start] = 1;
        let mut q = VecDeque::from([start]);
        while let Some(u) = q.pop_front() {
            for &(v, r) in &adj[u] {
                let want = col[u] * r;
                if col[v] == 0 {
                    col[v] = want;
                    q.push_back(v);
                } else if col[v] != want {
                    return None;
                }
            }
        }
    }
    Some(col)
}

pub fn exterior_matrices(sub: &Substitution, k: usize) -> Result<ExteriorMatrices> {
    let n = sub.n();
    if n > MAX_EXTERIOR_N {
        return Err(Error::UnsupportedDegree(n));
    }
    let m = sub.incidence_matrix();
    let b_k = exterior_power(&m, k);
    let m_k_star = DualMapTables::dual(sub, k)?.count_matrix();
    let geo = DualMapTables::geometric(sub, n - k)?;
    // reorder the geometric counts into the order of O_k through complements
    let types = wedge_types(n, k);
    let s = types.len();
    let mut m_geom = IntMatrix::zeros(s, s);
    let raw = geo.count_matrix();
    for (i, b) in types.iter().enumerate() {
        for (j, a) in types.iter().enumerate() {
            let bi = geo.index[&complement(n, b)];
            let aj = geo.index[&complement(n, a)];
            m_geom.set(i, j, raw.get(bi, aj));
        }
    }
    let transpose_relation = m_k_star == b_k.transpose();
    let parity = |t: &WedgeType| t.iter().map(|&v| v as i64).sum::<i64>();
    let sign_relation = (0..s).all(|i| {
        (0..s).all(|j| {
            let sg = if (parity(&types[i]) + parity(&types[j])) % 2 == 0 { 1 } else { -1 };
            m_geom.get(i, j) == sg * m_k_star.get(i, j)
        })
    });
    let conjugator = diagonal_conjugator(&m_k_star, &m_geom);
    Ok(ExteriorMatrices { k, b_k, m_k_star, m_geom, transpose_relation, sign_relation, conjugator })
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub holds: bool,
    pub positive: bool,
    pub primitive: bool,
    /// (source type, image face base, image type, sign) for each negative term
    pub negative_terms: Vec<(String, Vec<i64>, String, i64)>,
    /// (source type, image type, base of the +1 term, base of the −1 term)
    pub bad_cancellations: Vec<(String, String, Vec<i64>, Vec<i64>)>,
    /// a reorientation of O_k making every image positive, when one exists
    pub reorientation: Option<Vec<i64>>,
}

/// Hypothesis (P) for E*_{n̄}: every image of a positive basis dual face is a sum of
/// positive faces and M*_{n̄} is primitive.
pub fn positivity_check(sub: &Substitution, nbar: usize) -> Result<PositivityReport> {
    let tables = DualMapTables::dual(sub, nbar)?;
    let mut negative_terms = Vec::new();
    let mut bad = Vec::new();
    let s = tables.types.len();
    let mut adj: Vec<Vec<(usize, i64)>> = vec![vec![]; s];
    let mut consistent = true;
    for (a, img) in tables.images.iter().enumerate() {
        let mut by_type: HashMap<&WedgeType, (Option<&Vec<i64>>, Option<&Vec<i64>>)> = HashMap::new();
        for t in img {
            if t.sign < 0 {
                negative_terms.push((type_label(&tables.types[a]), t.offset.clone(), type_label(&t.ty), t.sign));
            }
            let e = by_type.entry(&t.ty).or_default();
            if t.sign > 0 {
                e.0 = Some(&t.offset);
            } else {
                e.1 = Some(&t.offset);
            }
            let b = tables.index[&t.ty];
            let r = t.sign.signum();
            if a == b && r < 0 {
                consistent = false;
            }
            adj[a].push((b, r));
            adj[b].push((a, r));
        }
        let mut pairs: Vec<_> = by_type.into_iter().filter_map(|(ty, (p, q))| Some((ty, p?, q?))).collect();
        pairs.sort();
        for (ty, p, q) in pairs {
            bad.push((type_label(&tables.types[a]), type_label(ty), p.clone(), q.clone()));
        }
    }
    let positive = negative_terms.is_empty();
    let primitive = tables.count_matrix().abs().is_primitive();
    let reorientation = if consistent { two_colour(&adj) } else { None };
    Ok(PositivityReport {
        holds: positive && primitive,
        positive,
        primitive,
        negative_terms,
        bad_cancellations: bad,
        reorientation,
    })
}

/// Geometric duals in the two dimensions used for patches and their boundaries.
#[derive(Clone, Debug)]
pub struct GeometricPair {
    pub top: DualMapTables,
    pub edge: DualMapTables,
}

impl GeometricPair {
    pub fn new(sub: &Substitution, d: usize) -> Result<Self> {
        Ok(GeometricPair { top: DualMapTables::geometric(sub, d - 1)?, edge: DualMapTables::geometric(sub, d - 2)? })
    }

    /// ∂(E^{d−1} c) = E^{d−2}(∂c), compared as canonical chains.
    pub fn commutes_on(&self, c: &Chain) -> bool {
        let lhs = crate::chain::boundary(&self.top.apply(c));
        let rhs = self.edge.apply(&crate::chain::boundary(c));
        lhs == rhs
    }
}

/// Σ e_a over the letters of a type; re-exported for the near-set windows.
pub fn letters_vector(n: usize, t: &[Letter]) -> Vec<i64> {
    type_vector(n, t)
}
