//! Characteristic polynomials, factorization over Q, Pisot splitting and hypothesis (N).

use super::field::NumberField;
use super::poly::{IntPoly, QPoly};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use std::sync::Arc;

pub const MAX_FACTOR_DEGREE: usize = 16;

/// det(xI − A) by Faddeev–LeVerrier in exact integer arithmetic.
pub fn char_poly(a: &IntMatrix) -> IntPoly {
    let n = a.rows;
    assert_eq!(n, a.cols, "square matrix required");
    let am: Vec<i128> = a.data.iter().map(|&v| v as i128).collect();
    let matmul = |x: &[i128], y: &[i128]| {
        let mut out = vec![0i128; n * n];
        for i in 0..n {
            for k in 0..n {
                let xv = x[i * n + k];
                if xv == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += xv * y[k * n + j];
                }
            }
        }
        out
    };
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    let mut mk = vec![0i128; n * n];
    for k in 1..=n {
        let mut next = matmul(&am, &mk);
        for i in 0..n {
            next[i * n + i] += c[n - k + 1];
        }
        mk = next;
        let amk = matmul(&am, &mk);
        let tr: i128 = (0..n).map(|i| amk[i * n + i]).sum();
        c[n - k] = -tr / k as i128;
    }
    IntPoly::new(c)
}

/// Simultaneous approximation of all complex roots (Aberth–Ehrlich), polished by Newton.
pub fn complex_roots(p: &IntPoly) -> Vec<Complex64> {
    let m = p.degree();
    if m == 0 {
        return vec![];
    }
    let lead = p.leading() as f64;
    let cauchy = 1.0 + p.coeffs()[..m].iter().map(|&c| (c as f64 / lead).abs()).fold(0.0, f64::max);
    let dp = p.derivative();
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(cauchy * 0.9, std::f64::consts::TAU * k as f64 / m as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for k in 0..m {
            let pv = p.eval_c64(z[k]);
            let dv = dp.eval_c64(z[k]);
            if pv.norm() == 0.0 {
                continue;
            }
            let w = pv / dv;
            let s: Complex64 = (0..m).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let off = w / (Complex64::new(1.0, 0.0) - w * s);
            if off.is_finite() {
                z[k] -= off;
                worst = worst.max(off.norm() / (1.0 + z[k].norm()));
            }
        }
        if worst < 1e-16 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let d = dp.eval_c64(*zk);
            if d.norm() == 0.0 {
                break;
            }
            let step = p.eval_c64(*zk) / d;
            if step.is_finite() {
                *zk -= step;
            }
        }
        if zk.im.abs() < 1e-14 * (1.0 + zk.re.abs()) {
            zk.im = 0.0;
        }
    }
    z
}

/// A disk certified to contain exactly one root.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RootDisk {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl RootDisk {
    pub fn center(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
    pub fn modulus_upper(&self) -> f64 {
        self.center().norm() + self.radius
    }
    pub fn modulus_lower(&self) -> f64 {
        (self.center().norm() - self.radius).max(0.0)
    }
}

/// Inclusion disks m·|p(z)|/|p'(z)| (with a rounding allowance), checked pairwise disjoint.
pub fn certified_roots(p: &IntPoly) -> Result<Vec<RootDisk>> {
    let m = p.degree();
    let roots = complex_roots(p);
    let dp = p.derivative();
    let eps = f64::EPSILON;
    let mut disks = Vec::with_capacity(m);
    for z in &roots {
        let r = z.norm();
        let absum: f64 = p.coeffs().iter().rev().fold(0.0, |acc, &c| acc * r + (c as f64).abs());
        let dabsum: f64 = dp.coeffs().iter().rev().fold(0.0, |acc, &c| acc * r + (c as f64).abs());
        let err = 4.0 * (m as f64 + 2.0) * eps * absum;
        let derr = 4.0 * (m as f64 + 2.0) * eps * dabsum;
        let num = p.eval_c64(*z).norm() + err;
        let den = dp.eval_c64(*z).norm() - derr;
        if den <= 0.0 {
            return Err(Error::Numeric(format!("root isolation failed for {p}")));
        }
        disks.push(RootDisk { re: z.re, im: z.im, radius: m as f64 * num / den * (1.0 + 1e-12) + 1e-300 });
    }
    for i in 0..m {
        for j in i + 1..m {
            let dist = (disks[i].center() - disks[j].center()).norm();
            if dist <= disks[i].radius + disks[j].radius {
                return Err(Error::Numeric(format!("overlapping root disks for {p}")));
            }
        }
    }
    Ok(disks)
}

/// Squarefree decomposition (Yun): returns (factor, multiplicity) with monic integer factors.
pub fn squarefree_decomposition(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    let pq = p.to_q().monic();
    if pq.degree() == 0 {
        return vec![];
    }
    let dp = pq.derivative();
    let a0 = pq.gcd(&dp);
    let mut b = pq.divrem(&a0).0;
    let c = dp.divrem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        let bn = b.divrem(&a).0;
        let cn = d.divrem(&a).0;
        if a.degree() > 0 {
            out.push((a.to_int().expect("monic factor of monic integer polynomial is integral"), i));
        }
        d = cn.sub(&bn.derivative());
        b = bn;
        i += 1;
    }
    out
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        if f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Split a monic squarefree integer polynomial into irreducible factors by grouping
/// numeric roots into subsets whose product rounds to an integer polynomial that
/// divides exactly.
fn split_squarefree(p: &IntPoly) -> Vec<IntPoly> {
    let mut rest = p.clone();
    let mut roots = complex_roots(p);
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= rest.degree() {
        let mut found: Option<(Vec<usize>, IntPoly)> = None;
        combinations(roots.len(), s, |sub| {
            let mut prod = vec![Complex64::new(1.0, 0.0)];
            for &i in sub {
                let mut nx = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
                for (j, c) in prod.iter().enumerate() {
                    nx[j + 1] += c;
                    nx[j] -= c * roots[i];
                }
                prod = nx;
            }
            let mut coeffs = Vec::with_capacity(prod.len());
            for c in &prod {
                let r = c.re.round();
                if c.im.abs() > 1e-6 * (1.0 + c.re.abs()) || (c.re - r).abs() > 1e-6 * (1.0 + r.abs()) {
                    return false;
                }
                coeffs.push(r as i128);
            }
            let cand = IntPoly::new(coeffs);
            if rest.div_exact(&cand).is_some() {
                found = Some((sub.to_vec(), cand));
                return true;
            }
            false
        });
        match found {
            Some((sub, cand)) => {
                rest = rest.div_exact(&cand).unwrap();
                let mut keep = Vec::new();
                for (i, r) in roots.iter().enumerate() {
                    if !sub.contains(&i) {
                        keep.push(*r);
                    }
                }
                roots = keep;
                out.push(cand);
            }
            None => s += 1,
        }
    }
    if rest.degree() > 0 {
        out.push(rest);
    }
    out
}

/// Exact irreducible factorization over Z of a monic polynomial.
pub fn factor_over_q(p: &IntPoly) -> Result<Vec<(IntPoly, usize)>> {
    if p.degree() > MAX_FACTOR_DEGREE {
        return Err(Error::UnsupportedDegree(p.degree()));
    }
    if !p.is_monic() {
        return Err(Error::Internal(format!("factor_over_q expects a monic polynomial, got {p}")));
    }
    let mut out = Vec::new();
    for (sf, mult) in squarefree_decomposition(p) {
        for h in split_squarefree(&sf) {
            out.push((h, mult));
        }
    }
    out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    let prod = out.iter().fold(IntPoly::one(), |acc, (h, m)| acc.mul(&h.pow(*m as u32)));
    if &prod != p {
        return Err(Error::Internal(format!("factorization of {p} does not multiply back")));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PisotData {
    pub charpoly: IntPoly,
    pub f: IntPoly,
    pub g: IntPoly,
    pub d: usize,
    pub beta: f64,
    pub beta_lo: String,
    pub beta_hi: String,
    /// roots of f other than β, one per complex-conjugate pair (Im > 0), reals first
    pub conjugates: Vec<RootDisk>,
    pub r: usize,
    pub s: usize,
    pub unit: bool,
    pub reducible: bool,
    #[serde(skip)]
    pub field: Arc<NumberField>,
    #[serde(skip)]
    pub beta_disk: RootDisk,
}

impl PisotData {
    /// Certified upper bound of the largest conjugate modulus, the contraction rate on K_c.
    pub fn max_conjugate_modulus(&self) -> f64 {
        self.conjugates.iter().map(|c| c.modulus_upper()).fold(0.0, f64::max)
    }
}

fn decimal(x: &BigRational) -> String {
    let scale = num_bigint::BigInt::from(10u8).pow(20);
    let v = (x * BigRational::from_integer(scale.clone())).round().to_integer();
    let neg = v.sign() == num_bigint::Sign::Minus;
    let s = v.magnitude().to_string();
    let s = format!("{:0>21}", s);
    let (ip, fp) = s.split_at(s.len() - 20);
    format!("{}{}.{}", if neg { "-" } else { "" }, ip, fp)
}

/// Locate the Pisot factor of the characteristic polynomial of M.
pub fn pisot_split_matrix(m: &IntMatrix) -> Result<PisotData> {
    let cp = char_poly(m);
    let factors = factor_over_q(&cp)?;
    let mut all: Vec<(usize, Vec<RootDisk>)> = Vec::new();
    for (i, (h, _)) in factors.iter().enumerate() {
        let disks = certified_roots(h)?;
        all.push((i, disks));
    }
    // dominant: real root with maximal modulus
    let mut best: Option<(usize, usize)> = None;
    for (i, disks) in &all {
        for (j, dk) in disks.iter().enumerate() {
            if best.is_none_or(|(bi, bj)| dk.center().norm() > all[bi].1[bj].center().norm()) {
                best = Some((*i, j));
            }
        }
    }
    let (fi, bj) = best.ok_or(Error::NotPisot)?;
    let bdisk = all[fi].1[bj];
    if bdisk.im != 0.0 || bdisk.re - bdisk.radius <= 1.0 {
        return Err(Error::NotPisot);
    }
    for (i, disks) in &all {
        for (j, dk) in disks.iter().enumerate() {
            if (*i, j) == (fi, bj) {
                continue;
            }
            if dk.modulus_upper() >= bdisk.re - bdisk.radius {
                return Err(Error::AmbiguousPisot);
            }
            if *i == fi && dk.modulus_upper() >= 1.0 {
                return Err(Error::NotPisot);
            }
        }
    }
    if factors[fi].1 != 1 {
        return Err(Error::AmbiguousPisot);
    }
    let f = factors[fi].0.clone();
    let g = cp.div_exact(&f).ok_or_else(|| Error::Internal("f does not divide the characteristic polynomial".into()))?;
    let mut conj: Vec<RootDisk> =
        all[fi].1.iter().enumerate().filter(|&(j, _)| j != bj).map(|(_, d)| *d).filter(|d| d.im >= 0.0).collect();
    conj.sort_by(|a, b| (a.im != 0.0).cmp(&(b.im != 0.0)).then(b.center().norm().total_cmp(&a.center().norm())));
    let r = 1 + conj.iter().filter(|d| d.im == 0.0).count();
    let s = conj.len() + 1 - r;

    let rad = BigRational::from_float(bdisk.radius).ok_or_else(|| Error::Numeric("radius".into()))?;
    let c = BigRational::from_float(bdisk.re).ok_or_else(|| Error::Numeric("center".into()))?;
    let (lo, hi) = (&c - &rad, &c + &rad);
    let slo = f.eval_rational(&lo);
    let shi = f.eval_rational(&hi);
    use num_traits::Signed;
    if !(slo.is_negative() && shi.is_positive()) {
        return Err(Error::Numeric("β interval does not bracket a sign change".into()));
    }
    let field = NumberField::new(f.clone(), lo.clone(), hi.clone());
    let (rlo, rhi) = field.refined_interval(1e-18);
    let unit = f.coeff(0).abs() == 1;
    let reducible = g.degree() > 0;
    Ok(PisotData {
        charpoly: cp,
        d: f.degree(),
        beta: ((&rlo + &rhi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(bdisk.re),
        beta_lo: decimal(&rlo),
        beta_hi: decimal(&rhi),
        f,
        g,
        conjugates: conj,
        r,
        s,
        unit,
        reducible,
        field,
        beta_disk: bdisk,
    })
}

pub fn pisot_split(sub: &crate::subst::Substitution) -> Result<PisotData> {
    if !sub.is_primitive() {
        return Err(Error::NotPisot);
    }
    pisot_split_matrix(&sub.incidence_matrix())
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisN {
    pub holds: bool,
    pub squarefree: bool,
    pub constant_term_one: bool,
    /// (factor, order k with factor | x^k − 1, or None)
    pub factors: Vec<(String, Option<usize>)>,
    pub reason: String,
}

fn cyclotomic_order(h: &IntPoly) -> Option<usize> {
    let m = h.degree();
    let bound = (2 * m * m).max(2);
    (1..=bound).find(|&k| {
        let mut c = vec![0i128; k + 1];
        c[0] = -1;
        c[k] = 1;
        IntPoly::new(c).div_exact(h).is_some()
    })
}

pub fn check_hypothesis_n(g: &IntPoly) -> HypothesisN {
    if g.degree() == 0 {
        let ok = g.coeff(0) == 1;
        return HypothesisN {
            holds: ok,
            squarefree: true,
            constant_term_one: ok,
            factors: vec![],
            reason: if ok { "g = 1".into() } else { "constant g different from 1".into() },
        };
    }
    let gq: QPoly = g.to_q();
    let squarefree = gq.gcd(&gq.derivative()).degree() == 0;
    let constant_term_one = g.coeff(0) == 1;
    let factors: Vec<(String, Option<usize>)> = match factor_over_q(g) {
        Ok(fs) => fs.iter().map(|(h, _)| (h.to_string(), cyclotomic_order(h))).collect(),
        Err(_) => vec![(g.to_string(), None)],
    };
    let cyclo = factors.iter().all(|(_, k)| k.is_some());
    let holds = squarefree && constant_term_one && cyclo;
    let reason = if holds {
        "squarefree, g(0) = 1, all factors cyclotomic".to_string()
    } else if !squarefree {
        "repeated root".into()
    } else if !constant_term_one {
        format!("g(0) = {}", g.coeff(0))
    } else {
        "non-cyclotomic factor".into()
    };
    HypothesisN { holds, squarefree, constant_term_one, factors, reason }
}
