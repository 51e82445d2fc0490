//! Arithmetic in Q(β) = Q[x]/(f) with certified sign decisions.

use super::poly::{IntPoly, QPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::sync::Arc;

/// A real number field generated by a root β of a monic irreducible f,
/// together with an isolating rational interval for β.
#[derive(Debug)]
pub struct NumberField {
    pub f: IntPoly,
    fq: QPoly,
    lo: BigRational,
    hi: BigRational,
    beta: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgNum {
    pub field: Arc<NumberField>,
    pub coords: Vec<BigRational>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.f == o.f && self.lo == o.lo && self.hi == o.hi
    }
}
impl Eq for NumberField {}

impl NumberField {
    /// `lo < β < hi` must isolate β as the only root of f in the interval,
    /// with f(lo) < 0 < f(hi) or the reverse.
    pub fn new(f: IntPoly, lo: BigRational, hi: BigRational) -> Arc<Self> {
        let fq = f.to_q();
        let mut k = NumberField { f, fq, lo, hi, beta: f64::NAN };
        let (a, b) = k.refined_interval(1e-17);
        k.beta = ((a + b) / q(2)).to_f64().unwrap_or(f64::NAN);
        Arc::new(k)
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn interval(&self) -> (BigRational, BigRational) {
        (self.lo.clone(), self.hi.clone())
    }

    pub fn beta_f64(&self) -> f64 {
        self.beta
    }

    pub fn zero(self: &Arc<Self>) -> AlgNum {
        AlgNum { field: self.clone(), coords: vec![BigRational::zero(); self.degree()] }
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> AlgNum {
        self.from_rational(q(v))
    }

    pub fn from_rational(self: &Arc<Self>, v: BigRational) -> AlgNum {
        let mut a = self.zero();
        a.coords[0] = v;
        a
    }

    /// The generator β.
    pub fn gen(self: &Arc<Self>) -> AlgNum {
        self.from_qpoly(&QPoly::new(vec![BigRational::zero(), BigRational::one()]))
    }

    pub fn from_qpoly(self: &Arc<Self>, p: &QPoly) -> AlgNum {
        let (_, r) = p.divrem(&self.fq);
        let mut coords = r.c;
        coords.resize(self.degree(), BigRational::zero());
        AlgNum { field: self.clone(), coords }
    }

    pub fn from_int_coords(self: &Arc<Self>, c: &[i64]) -> AlgNum {
        self.from_qpoly(&QPoly::new(c.iter().map(|&v| q(v)).collect()))
    }

    /// One bisection step shrinking (lo, hi) around β.
    fn bisect(&self, lo: &mut BigRational, hi: &mut BigRational) {
        let mid = (&*lo + &*hi) / q(2);
        let s_lo = self.fq_sign_at(lo);
        let s_mid = self.fq_sign_at(&mid);
        if s_mid == Ordering::Equal {
            // β rational is excluded by irreducibility of degree ≥ 2; degree 1 is exact anyway
            *lo = mid.clone();
            *hi = mid;
        } else if s_mid == s_lo {
            *lo = mid;
        } else {
            *hi = mid;
        }
    }

    fn fq_sign_at(&self, x: &BigRational) -> Ordering {
        self.f.eval_rational(x).cmp(&BigRational::zero())
    }

    /// Refine the stored interval copy until its width is below `width`.
    pub fn refined_interval(&self, width: f64) -> (BigRational, BigRational) {
        let (mut lo, mut hi) = self.interval();
        let w = BigRational::from_float(width).unwrap_or_else(|| q(1));
        while &hi - &lo > w {
            self.bisect(&mut lo, &mut hi);
        }
        (lo, hi)
    }
}

/// Interval enclosure of Σ c_i x^i for x ∈ [lo, hi] with 0 < lo.
fn eval_interval(c: &[BigRational], lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut plo = BigRational::one();
    let mut phi = BigRational::one();
    let mut slo = BigRational::zero();
    let mut shi = BigRational::zero();
    for ci in c {
        if ci.is_positive() {
            slo += ci * &plo;
            shi += ci * &phi;
        } else if ci.is_negative() {
            slo += ci * &phi;
            shi += ci * &plo;
        }
        plo = &plo * lo;
        phi = &phi * hi;
    }
    (slo, shi)
}

impl AlgNum {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn poly(&self) -> QPoly {
        QPoly::new(self.coords.clone())
    }

    pub fn add(&self, o: &AlgNum) -> AlgNum {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        AlgNum { field: self.field.clone(), coords }
    }

    pub fn sub(&self, o: &AlgNum) -> AlgNum {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        AlgNum { field: self.field.clone(), coords }
    }

    pub fn neg(&self) -> AlgNum {
        AlgNum { field: self.field.clone(), coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, o: &AlgNum) -> AlgNum {
        self.field.from_qpoly(&self.poly().mul(&o.poly()))
    }

    pub fn scale(&self, s: &BigRational) -> AlgNum {
        AlgNum { field: self.field.clone(), coords: self.coords.iter().map(|a| a * s).collect() }
    }

    pub fn scale_int(&self, s: i64) -> AlgNum {
        self.scale(&q(s))
    }

    pub fn inv(&self) -> Option<AlgNum> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = self.poly().xgcd(&self.field.fq);
        if g.degree() != 0 {
            return None;
        }
        Some(self.field.from_qpoly(&s))
    }

    pub fn div(&self, o: &AlgNum) -> Option<AlgNum> {
        Some(self.mul(&o.inv()?))
    }

    /// Exact sign of the real embedding at β.
    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let (mut lo, mut hi) = self.field.interval();
        loop {
            let (a, b) = eval_interval(&self.coords, &lo, &hi);
            if a.is_positive() {
                return Ordering::Greater;
            }
            if b.is_negative() {
                return Ordering::Less;
            }
            if lo == hi {
                // interval collapsed onto an exact rational root
                return a.cmp(&BigRational::zero());
            }
            self.field.bisect(&mut lo, &mut hi);
        }
    }

    pub fn to_f64(&self) -> f64 {
        let b = self.field.beta_f64();
        self.coords.iter().rev().fold(0.0, |acc, c| acc * b + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Evaluate at an arbitrary complex conjugate of β.
    pub fn eval_c64(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        self.coords
            .iter()
            .rev()
            .fold(num_complex::Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Integer coordinates when all coordinates are integral.
    pub fn int_coords(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect()
    }

    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

/// Sign of x; a free function mirroring the report vocabulary.
pub fn sign_of(x: &AlgNum) -> Ordering {
    x.sign()
}
