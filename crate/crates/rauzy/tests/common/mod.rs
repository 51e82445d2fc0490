#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rauzy::chain::{wedge_types, Chain, Face};
use rauzy::matrix::IntMatrix;
use rauzy::subst::families;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_face(r: &mut ChaCha8Rng, n: usize, k: usize, spread: i64) -> Face {
    let types = wedge_types(n, k);
    let ty = types[r.gen_range(0..types.len())].clone();
    let base = (0..n).map(|_| r.gen_range(-spread..=spread)).collect();
    Face::new(base, ty)
}

pub fn random_chain(r: &mut ChaCha8Rng, n: usize, k: usize, terms: usize, dual: bool) -> Chain {
    let mut c = Chain::new(n, k, dual);
    for _ in 0..terms {
        let f = random_face(r, n, k, 3);
        let v = r.gen_range(-3..=3);
        c.add_face(f, v);
    }
    c
}

pub fn face(base: &[i64], ty: &[u8]) -> Face {
    Face::new(base.to_vec(), ty.to_vec())
}

/// E²(σ_t) images of the ten basis faces as listed with the family.
pub fn expected_e2_sigma_t(t: usize) -> Vec<(Vec<u8>, Chain)> {
    let s = families::sigma_t(t);
    let mi = s.incidence_matrix().inverse_unimodular().unwrap();
    let e = |c1: i64, other: usize| {
        let mut v = vec![0i64; 5];
        v[0] = c1;
        v[other - 1] += 1;
        mi.mul_vec(&v)
    };
    let mut out = Vec::new();
    let mut push = |src: &[u8], terms: Vec<(Vec<i64>, Vec<u8>, i64)>| {
        let mut c = Chain::new(5, 2, false);
        for (b, ty, sg) in terms {
            c.add_face(Face::new(b, ty), sg);
        }
        out.push((src.to_vec(), c));
    };
    let t = t as i64;
    let five = |ty: &[u8], sg: i64| (1..=t).map(move |j| (e(t - j, 5), ty.to_vec(), sg)).collect::<Vec<_>>();
    let two = |ty: &[u8]| (1..=t + 1).map(move |j| (e(t + 1 - j, 2), ty.to_vec(), 1)).collect::<Vec<_>>();
    let z = vec![0i64; 5];
    push(&[4, 5], [five(&[3, 5], -1), vec![(z.clone(), vec![3, 4], 1)]].concat());
    push(&[3, 5], [five(&[2, 5], -1), vec![(z.clone(), vec![2, 4], 1)]].concat());
    push(&[3, 4], vec![(z.clone(), vec![2, 3], 1)]);
    push(&[2, 5], [two(&[4, 5]), five(&[1, 5], -1), vec![(z.clone(), vec![1, 4], 1)]].concat());
    push(&[2, 4], [two(&[3, 5]), vec![(z.clone(), vec![1, 3], 1)]].concat());
    push(&[2, 3], [two(&[2, 5]), vec![(z.clone(), vec![1, 2], 1)]].concat());
    push(&[1, 5], vec![(z.clone(), vec![4, 5], -1)]);
    push(&[1, 4], vec![(z.clone(), vec![3, 5], -1)]);
    push(&[1, 3], vec![(z.clone(), vec![2, 5], -1)]);
    push(&[1, 2], vec![(z.clone(), vec![1, 5], -1)]);
    out
}

/// The displayed 10×10 matrix M₂(σ_t).
pub fn m2_sigma_t(t: i64) -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![0, 0, 0, t + 1, 0, 0, -1, 0, 0, 0],
        vec![-t, 0, 0, 0, t + 1, 0, 0, -1, 0, 0],
        vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        vec![0, -t, 0, 0, 0, t + 1, 0, 0, -1, 0],
        vec![0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, -t, 0, 0, 0, 0, 0, -1],
        vec![0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    ])
}

/// Tribonacci (M₁, M₂, M₁*, M₂*) as displayed.
pub fn tribonacci_exterior() -> [IntMatrix; 4] {
    [
        IntMatrix::from_rows(&[vec![1, -1, 0], vec![-1, 0, -1], vec![1, 0, 0]]),
        IntMatrix::from_rows(&[vec![-1, -1, 1], vec![1, 0, 0], vec![0, 1, 0]]),
        IntMatrix::from_rows(&[vec![1, 1, 0], vec![1, 0, 1], vec![1, 0, 0]]),
        IntMatrix::from_rows(&[vec![-1, 1, 1], vec![-1, 0, 0], vec![0, -1, 0]]),
    ]
}
