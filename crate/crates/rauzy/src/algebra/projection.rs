//! Eigenvectors over Q(β), the projections π, π_e, π_c and planar K_c coordinates.

use super::field::AlgNum;
use super::pisot::PisotData;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::cmp::Ordering;

/// Kernel vector of (A − β·I) over Q(β), scaled into Z[β]^n with content 1.
fn exact_eigenvector(a: &IntMatrix, pd: &PisotData) -> Result<Vec<AlgNum>> {
    let n = a.rows;
    let k = &pd.field;
    let beta = k.gen();
    let mut rows: Vec<Vec<AlgNum>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = k.from_int(a.get(i, j));
                    if i == j { e.sub(&beta) } else { e }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().ok_or_else(|| Error::Numeric("non-invertible pivot".into()))?;
        rows[r] = rows[r].iter().map(|x| x.mul(&inv)).collect();
        for i in 0..n {
            if i != r && !rows[i][c].is_zero() {
                let fct = rows[i][c].clone();
                let sub: Vec<AlgNum> = rows[r].iter().map(|x| x.mul(&fct)).collect();
                rows[i] = rows[i].iter().zip(&sub).map(|(x, y)| x.sub(y)).collect();
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return Err(Error::Numeric(format!("eigenspace for β has dimension {}", free.len())));
    }
    let fc = free[0];
    let mut v = vec![k.zero(); n];
    v[fc] = k.from_int(1);
    for (ri, &pc) in pivots.iter().enumerate() {
        v[pc] = rows[ri][fc].neg();
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
    let s = BigRational::from_integer(lcm);
    let mut v: Vec<AlgNum> = v.iter().map(|x| x.scale(&s)).collect();
    let g = v.iter().flat_map(|x| x.coords.iter()).fold(BigInt::zero(), |acc, c| acc.gcd(&c.to_integer()));
    if !g.is_zero() && !g.is_one() {
        let s = BigRational::new(BigInt::one(), g);
        v = v.iter().map(|x| x.scale(&s)).collect();
    }
    let first = v.iter().find(|x| !x.is_zero()).expect("nonzero kernel vector");
    if first.sign() == Ordering::Less {
        v = v.iter().map(|x| x.neg()).collect();
    }
    Ok(v)
}

/// Basis of π(Z^n) and of ker π ∩ Z^n obtained from integer column operations on the
/// power-basis coefficient matrix of v_β.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeData {
    /// d×n integer matrix: row m holds the β^m coefficients of the coordinates of v_β
    pub coeff: Vec<Vec<i64>>,
    /// d integer vectors whose projections form a basis of π(Z^n)
    pub image_basis: Vec<Vec<i64>>,
    /// n − d integer vectors spanning the kernel of π on Z^n
    pub kernel_basis: Vec<Vec<i64>>,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        return if a < 0 { (-a, -1, 0) } else { (a, 1, 0) };
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - a.div_euclid(b) * y)
}

fn lattice_data(coeff: &[Vec<i64>], n: usize) -> Result<LatticeData> {
    let d = coeff.len();
    let mut a: Vec<Vec<i128>> = coeff.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let col_op = |a: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, p: usize, j: usize, m: [[i128; 2]; 2]| {
        // new_p = m00 col_p + m01 col_j ; new_j = m10 col_p + m11 col_j
        for row in a.iter_mut().chain(u.iter_mut()) {
            let (x, y) = (row[p], row[j]);
            row[p] = m[0][0] * x + m[0][1] * y;
            row[j] = m[1][0] * x + m[1][1] * y;
        }
    };
    for r in 0..d {
        let p = r;
        // bring a nonzero entry into the pivot column
        if a[r][p] == 0 {
            if let Some(j) = (p + 1..n).find(|&j| a[r][j] != 0) {
                col_op(&mut a, &mut u, p, j, [[0, 1], [1, 0]]);
            } else {
                return Err(Error::Numeric("v_β coordinates do not span Q(β)".into()));
            }
        }
        for j in p + 1..n {
            let (x, y) = (a[r][p], a[r][j]);
            if y == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(x, y);
            col_op(&mut a, &mut u, p, j, [[s, t], [-y / g, x / g]]);
        }
    }
    let col = |j: usize| -> Vec<i64> { (0..n).map(|i| u[i][j] as i64).collect() };
    Ok(LatticeData {
        coeff: coeff.to_vec(),
        image_basis: (0..d).map(col).collect(),
        kernel_basis: (d..n).map(col).collect(),
    })
}

#[derive(Clone, Debug)]
pub struct Projection {
    pub n: usize,
    pub d: usize,
    pub m: IntMatrix,
    pub m_inv: IntMatrix,
    pub beta: f64,
    /// left and right Perron eigenvectors in Z[β]^n
    pub v_beta: Vec<AlgNum>,
    pub u_beta_exact: Vec<AlgNum>,
    /// β first, then the remaining conjugates of f, one per complex pair
    pub roots: Vec<Complex64>,
    /// numeric dual bases with u_i·v_i = 1
    pub u: Vec<Vec<Complex64>>,
    pub v: Vec<Vec<Complex64>>,
    /// row-major n×n real matrices of π_e, π_c and π = π_e + π_c
    pub pe_mat: Vec<f64>,
    pub pc_mat: Vec<f64>,
    /// orthonormal basis of K_c (d−1 vectors of length n)
    pub kc_basis: Vec<Vec<f64>>,
    /// row-major (d−1)×n matrix giving K_c coordinates of π_c(x)
    pub kc_mat: Vec<f64>,
    /// row-major (d−1)×(d−1) matrix of M restricted to K_c
    pub contraction: Vec<f64>,
    /// numeric v_β, so that π_e-scalar(x) = Σ x_j v_j
    pub pe_scalar: Vec<f64>,
    pub lattice: LatticeData,
    pub conj_modulus_bound: f64,
}

impl Projection {
    pub fn new(m: &IntMatrix, pd: &PisotData) -> Result<Self> {
        if !pd.unit {
            return Err(Error::NotUnimodular(m.det()));
        }
        let n = m.rows;
        let d = pd.d;
        let m_inv = m.inverse_unimodular().ok_or(Error::NotUnimodular(m.det()))?;
        let v_beta = exact_eigenvector(&m.transpose(), pd)?;
        let u_beta_exact = exact_eigenvector(m, pd)?;
        let mut roots = vec![Complex64::new(pd.beta, 0.0)];
        roots.extend(pd.conjugates.iter().map(|c| c.center()));
        let mut u = Vec::new();
        let mut v = Vec::new();
        for z in &roots {
            let vi: Vec<Complex64> = v_beta.iter().map(|x| x.eval_c64(*z)).collect();
            let ui: Vec<Complex64> = u_beta_exact.iter().map(|x| x.eval_c64(*z)).collect();
            let dot: Complex64 = ui.iter().zip(&vi).map(|(a, b)| a * b).sum();
            u.push(ui.iter().map(|x| x / dot).collect::<Vec<_>>());
            v.push(vi);
        }
        let mut pe_mat = vec![0.0; n * n];
        let mut pc_mat = vec![0.0; n * n];
        for (i, z) in roots.iter().enumerate() {
            let w = if z.im != 0.0 { 2.0 } else { 1.0 };
            for a in 0..n {
                for b in 0..n {
                    let val = w * (u[i][a] * v[i][b]).re;
                    if i == 0 {
                        pe_mat[a * n + b] += val;
                    } else {
                        pc_mat[a * n + b] += val;
                    }
                }
            }
        }
        // spanning vectors of K_c, then Gram–Schmidt
        let mut span: Vec<Vec<f64>> = Vec::new();
        for (i, z) in roots.iter().enumerate().skip(1) {
            span.push(u[i].iter().map(|c| c.re).collect());
            if z.im != 0.0 {
                span.push(u[i].iter().map(|c| c.im).collect());
            }
        }
        let mut kc_basis: Vec<Vec<f64>> = Vec::new();
        for s in span {
            let mut w = s.clone();
            for q in &kc_basis {
                let dot: f64 = w.iter().zip(q).map(|(a, b)| a * b).sum();
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= dot * qi;
                }
            }
            let nrm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if nrm < 1e-12 {
                return Err(Error::Numeric("degenerate contracting space".into()));
            }
            kc_basis.push(w.iter().map(|x| x / nrm).collect());
        }
        let dc = d - 1;
        let mut kc_mat = vec![0.0; dc * n];
        for (r, q) in kc_basis.iter().enumerate() {
            for b in 0..n {
                kc_mat[r * n + b] = (0..n).map(|a| q[a] * pc_mat[a * n + b]).sum();
            }
        }
        let mut contraction = vec![0.0; dc * dc];
        for r in 0..dc {
            for c in 0..dc {
                let mut s = 0.0;
                for a in 0..n {
                    for b in 0..n {
                        s += kc_basis[r][a] * m.get(a, b) as f64 * kc_basis[c][b];
                    }
                }
                contraction[r * dc + c] = s;
            }
        }
        let pe_scalar: Vec<f64> = v_beta.iter().map(|x| x.to_f64()).collect();
        let coeff: Vec<Vec<i64>> = (0..d)
            .map(|mi| {
                v_beta
                    .iter()
                    .map(|x| x.coords[mi].to_integer().to_i64().expect("small eigenvector coordinates"))
                    .collect()
            })
            .collect();
        let lattice = lattice_data(&coeff, n)?;
        Ok(Projection {
            n,
            d,
            m: m.clone(),
            m_inv,
            beta: pd.beta,
            v_beta,
            u_beta_exact,
            roots,
            u,
            v,
            pe_mat,
            pc_mat,
            kc_basis,
            kc_mat,
            contraction,
            pe_scalar,
            lattice,
            conj_modulus_bound: pd.max_conjugate_modulus(),
        })
    }

    pub fn from_substitution(sub: &crate::subst::Substitution) -> Result<(PisotData, Self)> {
        let pd = super::pisot::pisot_split(sub)?;
        let pr = Projection::new(&sub.incidence_matrix(), &pd)?;
        Ok((pd, pr))
    }

    /// ⟨x, v_β⟩ exactly in Z[β].
    pub fn pe_exact(&self, x: &[i64]) -> AlgNum {
        let k = &self.v_beta[0].field;
        x.iter().zip(&self.v_beta).fold(k.zero(), |acc, (&c, v)| if c == 0 { acc } else { acc.add(&v.scale_int(c)) })
    }

    /// Integer key identifying π(x): the power-basis coordinates of ⟨x, v_β⟩.
    pub fn key(&self, x: &[i64]) -> Vec<i64> {
        self.lattice.coeff.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn pe(&self, x: &[i64]) -> f64 {
        x.iter().zip(&self.pe_scalar).map(|(&a, b)| a as f64 * b).sum()
    }

    pub fn pe_f(&self, x: &[f64]) -> f64 {
        x.iter().zip(&self.pe_scalar).map(|(a, b)| a * b).sum()
    }

    /// K_c coordinates of π_c(x), padded to the plane.
    pub fn kc(&self, x: &[i64]) -> [f64; 2] {
        let n = self.n;
        let mut out = [0.0; 2];
        for (r, o) in out.iter_mut().enumerate().take(self.d - 1) {
            *o = (0..n).map(|b| self.kc_mat[r * n + b] * x[b] as f64).sum();
        }
        out
    }

    pub fn kc_f(&self, x: &[f64]) -> [f64; 2] {
        let n = self.n;
        let mut out = [0.0; 2];
        for (r, o) in out.iter_mut().enumerate().take(self.d - 1) {
            *o = (0..n).map(|b| self.kc_mat[r * n + b] * x[b]).sum();
        }
        out
    }

    pub fn kc_unit(&self, a: usize) -> [f64; 2] {
        let mut e = vec![0i64; self.n];
        e[a] = 1;
        self.kc(&e)
    }

    /// Coordinates of a planar K_c point in the eigen-frame: ⟨x, v_i⟩ for the contracting
    /// conjugates with u_i·v_i = 1, as (Re, Im) of the first complex one or the two real values.
    pub fn eigen_coords(&self, p: [f64; 2]) -> [f64; 2] {
        let n = self.n;
        let x: Vec<f64> = (0..n).map(|a| p[0] * self.kc_basis[0][a] + if self.d > 2 { p[1] * self.kc_basis[1][a] } else { 0.0 }).collect();
        let z = |i: usize| -> Complex64 { (0..n).map(|a| self.v[i][a] * x[a]).sum() };
        let z1 = z(1);
        if self.roots[1].im != 0.0 {
            [z1.re, z1.im]
        } else if self.d > 2 {
            [z1.re, z(2).re]
        } else {
            [z1.re, 0.0]
        }
    }

    /// The action of M on planar K_c coordinates.
    pub fn contract(&self, p: [f64; 2]) -> [f64; 2] {
        let dc = self.d - 1;
        if dc == 1 {
            return [self.contraction[0] * p[0], 0.0];
        }
        let c = &self.contraction;
        [c[0] * p[0] + c[1] * p[1], c[2] * p[0] + c[3] * p[1]]
    }

    /// Planar matrix of M^k on K_c (row-major 2×2, padded for d−1 = 1).
    pub fn contraction_pow(&self, k: usize) -> [f64; 4] {
        let mut acc = [1.0, 0.0, 0.0, 1.0];
        for _ in 0..k {
            let a = self.contract([acc[0], acc[2]]);
            let b = self.contract([acc[1], acc[3]]);
            acc = [a[0], b[0], a[1], b[1]];
        }
        acc
    }

    /// Full projection π(x) ∈ R^n along K_n.
    pub fn pi(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n).map(|a| (0..n).map(|b| (self.pe_mat[a * n + b] + self.pc_mat[a * n + b]) * x[b]).sum()).collect()
    }

    /// max |u_i·v_j − δ_ij| over all roots of f including conjugate partners.
    pub fn duality_error(&self) -> f64 {
        let mut us = Vec::new();
        let mut vs = Vec::new();
        for (i, z) in self.roots.iter().enumerate() {
            us.push(self.u[i].clone());
            vs.push(self.v[i].clone());
            if z.im != 0.0 {
                us.push(self.u[i].iter().map(|c| c.conj()).collect());
                vs.push(self.v[i].iter().map(|c| c.conj()).collect());
            }
        }
        let mut worst: f64 = 0.0;
        for i in 0..us.len() {
            for j in 0..vs.len() {
                let dot: Complex64 = us[i].iter().zip(&vs[j]).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }

    /// max-entry of π_c M − M π_c.
    pub fn commutation_error(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let pm: f64 = (0..n).map(|k| self.pc_mat[a * n + k] * self.m.get(k, b) as f64).sum();
                let mp: f64 = (0..n).map(|k| self.m.get(a, k) as f64 * self.pc_mat[k * n + b]).sum();
                worst = worst.max((pm - mp).abs());
            }
        }
        worst
    }

    /// ᵗM v_β − β v_β computed exactly; true when it vanishes.
    pub fn eigen_relation_exact(&self) -> bool {
        let n = self.n;
        let k = &self.v_beta[0].field;
        let beta = k.gen();
        (0..n).all(|j| {
            let lhs = (0..n).fold(k.zero(), |acc, i| acc.add(&self.v_beta[i].scale_int(self.m.get(i, j))));
            lhs.sub(&beta.mul(&self.v_beta[j])).is_zero()
        }) && (0..n).all(|i| {
            let lhs = (0..n).fold(k.zero(), |acc, j| acc.add(&self.u_beta_exact[j].scale_int(self.m.get(i, j))));
            lhs.sub(&beta.mul(&self.u_beta_exact[i])).is_zero()
        })
    }
}

/// Integer vector y = f(M)e_i for the first i where it is nonzero, and the
/// max-norm of π(y), which must vanish.
#[derive(Clone, Debug, Serialize)]
pub struct RedundancyWitness {
    pub index: usize,
    pub coefficients: Vec<i64>,
    pub residual: f64,
}

pub fn redundancy_witness(pd: &PisotData, pr: &Projection) -> Option<RedundancyWitness> {
    let fm = pd.f.eval_matrix(&pr.m);
    (0..pr.n).find_map(|i| {
        let y: Vec<i64> = (0..pr.n).map(|r| fm.get(r, i)).collect();
        if y.iter().all(|&c| c == 0) {
            return None;
        }
        let img = pr.pi(&y.iter().map(|&c| c as f64).collect::<Vec<_>>());
        let residual = img.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        Some(RedundancyWitness { index: i, coefficients: y, residual })
    })
}

/// ⟨M³e₂ − Me₂ − e₂, v_β⟩ for the σ_t family, returned exactly.
pub fn delta_identity(pr: &Projection) -> AlgNum {
    let mut e2 = vec![0i64; pr.n];
    e2[1] = 1;
    let m1 = pr.m.mul_vec(&e2);
    let m3 = pr.m.pow(3).mul_vec(&e2);
    let x: Vec<i64> = (0..pr.n).map(|i| m3[i] - m1[i] - e2[i]).collect();
    pr.pe_exact(&x)
}

pub fn sign_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "-",
        Ordering::Equal => "0",
        Ordering::Greater => "+",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subst::families;

    #[test]
    fn sigma0_projection() {
        let (pd, pr) = Projection::from_substitution(&families::sigma_t(0)).unwrap();
        assert!(pr.eigen_relation_exact());
        assert!(pr.duality_error() < 1e-12);
        assert!(pr.commutation_error() < 1e-10);
        // rational dependencies π(e1) = π(e3) + π(e4), π(e5) = π(e2) + π(e3)
        let e = |i: usize| {
            let mut v = vec![0.0; 5];
            v[i] = 1.0;
            pr.pi(&v)
        };
        for j in 0..5 {
            assert!((e(0)[j] - e(2)[j] - e(3)[j]).abs() < 1e-10);
            assert!((e(4)[j] - e(1)[j] - e(2)[j]).abs() < 1e-10);
        }
        let w = redundancy_witness(&pd, &pr).unwrap();
        assert!(w.residual < 1e-10);
        assert!(delta_identity(&pr).is_zero());
        assert_eq!(pr.lattice.kernel_basis.len(), 2);
        for kv in &pr.lattice.kernel_basis {
            assert!(pr.pe_exact(kv).is_zero());
        }
        // |det C| = 1/β for a unit cubic
        let c = &pr.contraction;
        let det = c[0] * c[3] - c[1] * c[2];
        assert!((det.abs() - 1.0 / pd.beta).abs() < 1e-10);
    }

    #[test]
    fn tribonacci_projection_is_injective() {
        let (_, pr) = Projection::from_substitution(&families::tribonacci()).unwrap();
        assert!(pr.lattice.kernel_basis.is_empty());
        assert!(pr.duality_error() < 1e-12);
    }
}
