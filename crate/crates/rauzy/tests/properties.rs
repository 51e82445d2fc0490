mod common;

use proptest::prelude::*;
use rauzy::chain::{boundary, phi, phi_inv, wedge_normalize, wedge_types, Chain, Face};
use rauzy::dynamics::chi::{chi_apply, ChiVariant};
use rauzy::dynamics::numeration::wedge_gifs;
use rauzy::fractal::hausdorff::hausdorff_distance;
use rauzy::fractal::{area_conservation, set_equation_check};
use rauzy::geometry::plane;
use rauzy::model::Model;
use rauzy::subst::{abelianize, families, Substitution};
use std::sync::OnceLock;

fn sigma0() -> &'static Model {
    static M: OnceLock<Model> = OnceLock::new();
    M.get_or_init(|| Model::new(families::sigma_t(0)).unwrap())
}

fn substitution() -> impl Strategy<Value = Substitution> {
    (2usize..6).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(1..=n as u8, 1..6), n)
            .prop_map(|imgs| Substitution::new(imgs).unwrap())
    })
}

fn word(n: u8) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(1..=n, 0..40)
}

fn chain(n: usize, k: usize, dual: bool) -> impl Strategy<Value = Chain> {
    let types = wedge_types(n, k);
    let face = (prop::collection::vec(-3i64..=3, n), 0..types.len(), -3i64..=3);
    prop::collection::vec(face, 0..8).prop_map(move |terms| {
        Chain::from_terms(n, k, dual, terms.into_iter().map(|(b, t, c)| (Face::new(b, types[t].clone()), c)))
    })
}

fn cloud() -> impl Strategy<Value = Vec<[f64; 2]>> {
    prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0).prop_map(|(x, y)| [x, y]), 1..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn abelianization_intertwines_the_matrix(s in substitution(), seed in any::<u64>()) {
        let n = s.n();
        let mut r = common::rng(seed);
        let w: Vec<u8> = (0..30).map(|_| rand::Rng::gen_range(&mut r, 1..=n as u8)).collect();
        prop_assert_eq!(abelianize(n, &s.apply(&w)), s.incidence_matrix().mul_vec(&abelianize(n, &w)));
    }

    #[test]
    fn occurrences_rebuild_every_image(s in substitution()) {
        let mut total = 0;
        for b in 1..=s.n() as u8 {
            for o in s.occurrences(b) {
                let mut w = o.prefix.clone();
                w.push(b);
                w.extend(&o.suffix);
                prop_assert_eq!(&w, s.image(o.source));
                total += 1;
            }
        }
        prop_assert_eq!(total, s.images().iter().map(Vec::len).sum::<usize>());
    }

    #[test]
    fn fixed_point_prefix_is_stable(t in 0usize..4, len in 1usize..400) {
        let s = families::sigma_t(t);
        let u = s.fixed_point_prefix(1, len).unwrap();
        prop_assert_eq!(u.len(), len);
        prop_assert_eq!(&s.apply(&u)[..len], &u[..]);
    }

    #[test]
    fn boundary_squares_to_zero(c in chain(5, 3, false)) {
        prop_assert!(boundary(&boundary(&c)).is_empty());
    }

    #[test]
    fn phi_round_trips(c in chain(5, 2, true)) {
        prop_assert_eq!(phi_inv(&phi(&c)), c.clone());
        prop_assert_eq!(phi(&phi_inv(&phi(&c))), phi(&c));
    }

    #[test]
    fn wedge_normal_form_is_sorted_with_permutation_sign(perm in Just(vec![1u8, 2, 4, 5]).prop_shuffle()) {
        let (ty, sign) = wedge_normalize(&perm).unwrap();
        prop_assert_eq!(ty, vec![1u8, 2, 4, 5]);
        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        prop_assert_eq!(sign, if inversions % 2 == 0 { 1 } else { -1 });
        let mut rep = perm.clone();
        rep[0] = rep[1];
        prop_assert!(wedge_normalize(&rep).is_none());
    }

    #[test]
    fn chi_preserves_the_projection(w in word(5)) {
        let m = sigma0();
        let x = chi_apply(&w, ChiVariant::Canonical).unwrap();
        prop_assert_eq!(m.proj.key(&abelianize(5, &x)), m.proj.key(&abelianize(5, &w)));
    }

    #[test]
    fn hausdorff_is_a_metric(a in cloud(), b in cloud(), c in cloud()) {
        let ab = hausdorff_distance(&a, &b).unwrap();
        let ba = hausdorff_distance(&b, &a).unwrap();
        let bc = hausdorff_distance(&b, &c).unwrap();
        let ac = hausdorff_distance(&a, &c).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!(ac <= ab + bc + 1e-12);
        prop_assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn contraction_scales_area_by_inverse_beta(a in cloud()) {
        let m = sigma0();
        let c = m.proj.contraction_pow(1);
        let poly = plane::regular_polygon(a[0], 1.0 + a.len() as f64 / 10.0, 3 + a.len() % 7);
        let img: Vec<_> = poly.iter().map(|&p| plane::apply(&c, p)).collect();
        let ratio = plane::signed_area(&img).abs() / plane::signed_area(&poly).abs();
        prop_assert!((ratio - 1.0 / m.beta()).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_tiles_satisfy_set_equation_and_keep_area(ty in 0usize..10, k in 0usize..9) {
        let m = sigma0();
        let ty = wedge_types(5, 2)[ty].clone();
        prop_assert!(set_equation_check(m, &ty, k).holds);
        prop_assert!(area_conservation(m, &ty, k).holds);
    }

    #[test]
    fn cloud_points_are_inside_their_attractor(state in 0usize..10, depth in 1usize..12) {
        let m = sigma0();
        let g = wedge_gifs(m);
        for p in g.cloud(state, depth).into_iter().step_by(7) {
            prop_assert!(g.contains(state, p, 100));
        }
    }
}
