use rauzy::chain::wedge_types;
use rauzy::dynamics::chi::{chi_apply, modified_cloud, modified_line, ChiVariant};
use rauzy::dynamics::coincidence::{monotone_against, strong_coincidence, Outcome};
use rauzy::dynamics::exchange::{coding_cross_check, exchange_orbit, first_return_check, Class, ClassifierKind, Partition};
use rauzy::dynamics::graph::{cross_check, WedgeSuffixGraph};
use rauzy::dynamics::numeration::{prefix_gifs, suffix_gifs, wedge_gifs};
use rauzy::fractal::hausdorff::hausdorff_distance;
use rauzy::fractal::rauzy_approx;
use rauzy::fractal::checks::{sample_spacing, tile_samples};
use rauzy::geometry::plane;
use rauzy::model::Model;
use rauzy::subst::families;

fn sigma(t: usize) -> Model {
    Model::new(families::sigma_t(t)).unwrap()
}

fn wedge(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

/// The coincidence table for σ₀ as printed with the family's strong coincidence result.
const SIGMA_ZERO_TABLE: [(&str, &str, usize); 30] = [
    ("123", "124", 7), ("123", "125", 7), ("123", "234", 11), ("123", "235", 10), ("123", "245", 12),
    ("124", "125", 6), ("124", "134", 8), ("124", "135", 8), ("124", "235", 10), ("124", "245", 10),
    ("124", "345", 10), ("125", "134", 8), ("125", "135", 8), ("125", "145", 8), ("134", "135", 6),
    ("134", "234", 9), ("134", "235", 9), ("134", "245", 10), ("134", "345", 10), ("135", "145", 7),
    ("135", "234", 11), ("135", "235", 9), ("135", "245", 9), ("145", "235", 9), ("145", "245", 9),
    ("145", "345", 9), ("234", "235", 11), ("234", "345", 10), ("235", "245", 7), ("245", "345", 8),
];

#[test]
fn coincidence_table_of_sigma_zero() {
    let tab = strong_coincidence(&sigma(0), 20);
    assert_eq!(tab.entries.len(), 30);
    assert!(!tab.partial && tab.holds());
    for (a, b, k) in SIGMA_ZERO_TABLE {
        assert_eq!(tab.get(&wedge(a), &wedge(b)), Some(&Outcome::Coincidence(k)), "{a} {b}");
        assert_eq!(tab.get(&wedge(b), &wedge(a)), Some(&Outcome::Coincidence(k)));
    }
    assert_eq!(tab.get(&wedge("123"), &wedge("123")), Some(&Outcome::Coincidence(0)));
    assert!(tab.to_csv().starts_with("a,b,k\n1^2^3,1^2^4,7\n"));
}

#[test]
fn coincidences_only_get_faster_along_the_family() {
    let base = strong_coincidence(&sigma(0), 20);
    for t in [1, 2] {
        let other = strong_coincidence(&sigma(t), 20);
        assert!(monotone_against(&base, &other).is_empty());
    }
}

#[test]
fn suffix_graph_matches_tables() {
    for t in 0..3 {
        let c = cross_check(&sigma(t));
        assert!(c.holds, "{:?}", c.mismatches);
    }
    let m = sigma(0);
    let g = WedgeSuffixGraph::from_tables(&m);
    let terms: usize = m.top.images.iter().map(|i| i.len()).sum();
    assert_eq!(g.edges.len(), terms);
}

#[test]
fn numeration_clouds_sit_on_their_tiles() {
    let m = sigma(0);
    // prefix cloud of letter a against the stepped-line vertices in front of a
    let u = m.sub.fixed_point_prefix(1, 3000).unwrap();
    let mut x = vec![0i64; 5];
    let mut line: Vec<Vec<[f64; 2]>> = vec![vec![]; 5];
    for &a in &u {
        line[a as usize - 1].push(m.kc(&x));
        x[a as usize - 1] += 1;
    }
    let pre = prefix_gifs(&m);
    let suf = suffix_gifs(&m);
    for a in 0..5 {
        let d = hausdorff_distance(&pre.cloud(a, 24), &line[a]).unwrap();
        assert!(d < 0.1, "prefix {a}: {d}");
        // suffix attractor is −R(a) − π_c(e_a)
        let e = m.unit_kc[a];
        let mirrored: Vec<[f64; 2]> = line[a].iter().map(|p| plane::sub(plane::scale(*p, -1.0), e)).collect();
        let d = hausdorff_distance(&suf.cloud(a, 24), &mirrored).unwrap();
        assert!(d < 0.1, "suffix {a}: {d}");
    }
    let w = wedge_gifs(&m);
    for p in w.cloud(4, 30) {
        assert!(w.contains(4, p, 120));
    }
}

#[test]
fn chi_and_the_modified_line() {
    assert_eq!(chi_apply(&[1, 2, 3, 4, 5], ChiVariant::Canonical).unwrap(), vec![3, 4, 2, 3, 4, 3, 2]);
    let m = sigma(0);
    let w = modified_line(&m, 7, ChiVariant::Canonical).unwrap();
    assert_eq!(w, vec![3, 4, 2, 3, 4, 3, 2]);
    assert!(modified_line(&Model::new(families::tribonacci()).unwrap(), 5, ChiVariant::Canonical).is_err());
    // each point of cloud(3) sits before a letter 3 of w
    let cloud = modified_cloud(&m, &[3], 200, ChiVariant::Canonical).unwrap();
    let w = modified_line(&m, 200, ChiVariant::Canonical).unwrap();
    assert_eq!(cloud.len(), w.iter().filter(|&&a| a == 3).count());
}

/// R̃(a) + π_c(e_a) = −R(b∧c): the modified-line points against reflected level-14 tiles.
#[test]
fn modified_tiles_are_reflected_wedge_tiles() {
    let m = sigma(0);
    for a in [2u8, 3, 4] {
        let bc: Vec<u8> = [2u8, 3, 4].into_iter().filter(|&b| b != a).collect();
        let e = m.unit_kc[a as usize - 1];
        let cloud: Vec<[f64; 2]> = modified_cloud(&m, &[a], 60_000, ChiVariant::Canonical)
            .unwrap()
            .into_iter()
            .map(|p| m.proj.eigen_coords(plane::scale(plane::add(p, e), -1.0)))
            .collect();
        let tile = rauzy_approx(&m, &bc, 14);
        let pts = tile_samples(&m, &tile, sample_spacing(&m, &tile));
        let d = hausdorff_distance(&pts, &cloud).unwrap();
        assert!(d < 0.06, "{a}: {d}");
    }
}

#[test]
fn first_return_and_coding() {
    for t in [0, 1] {
        let m = sigma(t);
        let p = Partition::new(&m, ClassifierKind::Ifs { depth: 120 }).unwrap();
        let r = first_return_check(&m, &p, 2000, 7, ChiVariant::Canonical).unwrap();
        assert!(r.holds, "{r:?}");
        let c = coding_cross_check(&m, &p, 2000, ChiVariant::Canonical).unwrap();
        assert!(c.holds, "{c:?}");
    }
}

#[test]
fn first_return_is_reproducible() {
    let m = sigma(0);
    let p = Partition::new(&m, ClassifierKind::Ifs { depth: 80 }).unwrap();
    let a = serde_json::to_string(&first_return_check(&m, &p, 300, 3, ChiVariant::Canonical).unwrap()).unwrap();
    let b = serde_json::to_string(&first_return_check(&m, &p, 300, 3, ChiVariant::Canonical).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn orbit_of_origin_codes_chi_of_u() {
    let m = sigma(0);
    let p = Partition::new(&m, ClassifierKind::Ifs { depth: 120 }).unwrap();
    assert_eq!(p.classify([0.0, 0.0]), Class::Tile(3));
    let c = exchange_orbit(&p, [0.0, 0.0], 0).unwrap();
    assert!(c.letters.is_empty() && c.endpoint == [0.0, 0.0]);
    let c = exchange_orbit(&p, [0.0, 0.0], 500).unwrap();
    let w = modified_line(&m, 500, ChiVariant::Canonical).unwrap();
    assert_eq!(c.letters, w);
    assert_eq!(p.classify([50.0, 50.0]), Class::Outside);
    assert!(exchange_orbit(&p, [50.0, 50.0], 3).is_err());
}

/// Letter frequencies of a long orbit against u_β pushed through χ.
#[test]
fn orbit_frequencies_follow_the_perron_vector() {
    let m = sigma(0);
    let f: Vec<f64> = m.proj.u_beta_exact.iter().map(|x| x.to_f64()).collect();
    let total: f64 = f.iter().sum();
    let f: Vec<f64> = f.iter().map(|x| x / total).collect();
    let mut expect = [f[1] + f[4], f[0] + f[2] + f[4], f[0] + f[3]];
    let s: f64 = expect.iter().sum();
    expect.iter_mut().for_each(|x| *x /= s);
    let p = Partition::new(&m, ClassifierKind::Ifs { depth: 100 }).unwrap();
    let c = exchange_orbit(&p, [0.0, 0.0], 20_000).unwrap();
    for (i, a) in [2u8, 3, 4].iter().enumerate() {
        let freq = c.letters.iter().filter(|&&b| b == *a).count() as f64 / c.letters.len() as f64;
        assert!((freq - expect[i]).abs() < 5e-3, "{a}: {freq} vs {}", expect[i]);
    }
}

#[test]
fn polygon_classifier_agrees_away_from_the_boundary() {
    let m = sigma(1);
    let p = Partition::new(&m, ClassifierKind::Polygon { level: 12, margin: 1e-7 }).unwrap();
    let c = coding_cross_check(&m, &p, 500, ChiVariant::Canonical).unwrap();
    assert!(c.escapes.is_empty());
    assert!(c.mismatches.len() < 25, "{:?}", c.mismatches);
    let _ = wedge_types(5, 2);
}
