use rauzy::chain::{wedge_types, Chain, Face};
use rauzy::fractal::audit::{aperiodic_tiling_audit, periodic_tiling_audit, tiling_audit};
use rauzy::fractal::checks::{self, corrected_identity_3_5, decomposition_check, decomposition_identities};
use rauzy::fractal::{area_conservation, rauzy_approx, set_equation_check};
use rauzy::geometry::plane;
use rauzy::model::Model;
use rauzy::subst::families;

fn sigma(t: usize) -> Model {
    Model::new(families::sigma_t(t)).unwrap()
}

fn cross_area(m: &Model, ty: &[u8]) -> f64 {
    let a = m.unit_kc[ty[0] as usize - 1];
    let b = m.unit_kc[ty[1] as usize - 1];
    (a[0] * b[1] - a[1] * b[0]).abs()
}

#[test]
fn level_zero_tile_is_the_projected_parallelogram() {
    let m = sigma(0);
    for ty in wedge_types(5, 2) {
        let t = rauzy_approx(&m, &ty, 0);
        assert_eq!(t.polygons.len(), 1);
        assert!((t.area() - cross_area(&m, &ty)).abs() < 1e-14);
    }
}

#[test]
fn areas_are_conserved_up_to_level_twelve() {
    for m in [sigma(0), sigma(1), Model::new(families::tribonacci()).unwrap()] {
        for ty in wedge_types(m.n, 2) {
            let r = area_conservation(&m, &ty, 12);
            assert!(r.holds, "{ty:?}: {}", r.max_relative_error);
        }
    }
}

#[test]
fn set_equations_hold_as_polygon_multisets() {
    let m = sigma(0);
    for ty in wedge_types(5, 2) {
        for k in [0, 3, 7] {
            let r = set_equation_check(&m, &ty, k);
            assert!(r.holds, "{r:?}");
        }
    }
}

/// Perron vector of |ᵗM₂| by power iteration, compared in direction with the face areas.
#[test]
fn areas_form_the_perron_vector() {
    for m in [sigma(0), sigma(1), sigma(2), Model::new(families::tribonacci()).unwrap()] {
        let r = checks::measure_eigen_check(&m).unwrap();
        assert!(r.holds, "{}", r.relative_residual);
        let cm = m.top.count_matrix();
        let s = m.top.types.len();
        let mut v = vec![1.0; s];
        for _ in 0..2000 {
            let w: Vec<f64> = (0..s).map(|a| (0..s).map(|b| cm.get(b, a).abs() as f64 * v[b]).sum()).collect();
            let norm: f64 = w.iter().sum();
            v = w.iter().map(|x| x / norm).collect();
        }
        let total: f64 = r.areas.iter().sum();
        for (x, y) in v.iter().zip(&r.areas) {
            assert!((x - y / total).abs() < 1e-9, "{x} vs {}", y / total);
        }
    }
}

#[test]
fn audit_detects_holes_and_overlaps() {
    let square = |x: f64, y: f64| vec![[x, y], [x + 1.0, y], [x + 1.0, y + 1.0], [x, y + 1.0]];
    let region = vec![[0.0, 0.0], [3.0, 0.0], [3.0, 3.0], [0.0, 3.0]];
    let grid: Vec<Vec<[f64; 2]>> = (0..3).flat_map(|i| (0..3).map(move |j| square(i as f64, j as f64))).collect();
    assert!(tiling_audit(&grid, &region).pass);
    let mut holed = grid.clone();
    holed.remove(4);
    let r = tiling_audit(&holed, &region);
    assert!((r.hole_fraction - 1.0 / 9.0).abs() < 1e-12 && !r.pass);
    let mut doubled = grid.clone();
    doubled.push(square(0.5, 0.5));
    let r = tiling_audit(&doubled, &region);
    assert!((r.overlap_fraction - 1.0 / 9.0).abs() < 1e-12 && !r.pass);
}

#[test]
fn level_ten_tilings() {
    let m = sigma(0);
    let u = Chain::from_terms(5, 2, false, [[1u8, 3], [1, 4], [2, 4], [2, 5], [3, 5]].iter().map(|t| (Face::at_origin(5, t.to_vec()), 1)));
    let a = aperiodic_tiling_audit(&m, &u, 1, 12, 10).unwrap();
    assert!(a.report.pass && a.region_radius > 1.0, "{a:?}");
    let faces = vec![vec![2, 3], vec![2, 4], vec![3, 4]];
    let p = periodic_tiling_audit(&m, &faces, &[vec![0, -1, 0, 1, 0], vec![0, 0, -1, 1, 0]], 10).unwrap();
    assert!(p.report.pass, "{p:?}");
    // a lattice of twice the covolume leaves half the fundamental domain uncovered
    let q = periodic_tiling_audit(&m, &faces, &[vec![0, -2, 0, 2, 0], vec![0, 0, -1, 1, 0]], 10).unwrap();
    assert!(!q.report.pass && (q.report.hole_fraction - 0.5).abs() < 0.01, "{q:?}");
}

#[test]
fn boundary_distances_shrink() {
    let m = sigma(0);
    let r = checks::boundary_convergence_report(&m, &[2, 3], 10);
    assert_eq!(r.distances.len(), 10);
    assert!(r.decreasing, "{:?}", r.distances);
    assert!(checks::boundary_convergence_report(&m, &[2, 3], 0).distances.is_empty());
}

#[test]
fn wedge_clouds_approach_the_polygonal_tiles() {
    let m = sigma(0);
    for ty in wedge_types(5, 2) {
        let r = checks::two_oracle_agreement(&m, &ty, &[6, 10, 14, 18], 0).unwrap();
        assert!(r.decreasing, "{:?}", r.distances);
    }
}

#[test]
fn decompositions_into_classical_subtiles() {
    let m = sigma(0);
    let levels = [6, 10, 14];
    for id in decomposition_identities().into_iter().filter(|id| id.lhs != "3^5") {
        let r = decomposition_check(&m, &id, &levels, 30).unwrap();
        assert!(r.decreasing && r.distances[2] < 0.05, "{} {:?}", id.lhs, r.distances);
    }
    let fixed = decomposition_check(&m, &corrected_identity_3_5(), &levels, 30).unwrap();
    assert!(fixed.decreasing && fixed.distances[2] < 0.05, "{:?}", fixed.distances);
    // the piece −R(5) − π_c(e_5) of the stated form sticks out of R(3∧5)
    let stated = decomposition_identities().into_iter().find(|id| id.lhs == "3^5").unwrap();
    let r = decomposition_check(&m, &stated, &levels, 30).unwrap();
    assert!(r.distances[2] > 0.5, "{:?}", r.distances);
}

#[test]
fn reflected_tile_is_pointwise_negated() {
    let m = sigma(0);
    let t = rauzy_approx(&m, &[2, 4], 5);
    let s = [0.25, -1.0];
    let r = t.reflected(-1.0, s);
    for (p, q) in t.polygons.iter().zip(&r.polygons) {
        let back = plane::sub(s, q.origin);
        assert!(plane::norm(plane::sub(back, p.origin)) < 1e-15);
    }
    assert!((t.area() - r.area()).abs() < 1e-12);
}
