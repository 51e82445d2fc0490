use rauzy::chain::{wedge_types, Chain, Face};
use rauzy::geometry::{self, nice, patch};
use rauzy::model::Model;
use rauzy::subst::families;

fn at_origin(n: usize, types: &[[u8; 2]]) -> Chain {
    Chain::from_terms(n, 2, false, types.iter().map(|t| (Face::at_origin(n, t.to_vec()), 1)))
}

fn sigma(t: usize) -> Model {
    Model::new(families::sigma_t(t)).unwrap()
}

#[test]
fn projected_faces_are_nondegenerate() {
    let m = sigma(0);
    for t in wedge_types(5, 2) {
        let p = geometry::project_face(&m, &Face::at_origin(5, t), 1).unwrap();
        assert!(p.area() > 1e-6);
    }
    let f = Face::new(vec![1, 0, -2, 0, 3], vec![2, 4]);
    let g = Face::at_origin(5, vec![2, 4]);
    let pf = geometry::project_face(&m, &f, 1).unwrap();
    let pg = geometry::project_face(&m, &g, 1).unwrap();
    let shift = m.kc(&f.base);
    assert!((pf.origin[0] - pg.origin[0] - shift[0]).abs() < 1e-12);
}

#[test]
fn figure_seed_projects_well_and_grows_without_overlap() {
    let m = sigma(0);
    let u = at_origin(5, &[[1, 3], [1, 4], [2, 4], [2, 5], [3, 5]]);
    assert!(geometry::projects_well(&m, &u, 1e-9).unwrap().holds);
    let p = geometry::stepped_surface(&m, &u, 5, 2).unwrap();
    let pw = geometry::projects_well(&m, &p.chain, 1e-9).unwrap();
    assert!(pw.holds, "{:?}", pw.witnesses);
    let k0 = geometry::stepped_surface(&m, &u, 5, 0).unwrap();
    assert_eq!(k0.chain, u);
}

#[test]
fn single_faces_recur_after_five_steps() {
    for t in 0..3 {
        let m = sigma(t);
        for ty in wedge_types(5, 2) {
            let u = Chain::from_face(5, Face::at_origin(5, ty.clone()), 1, false);
            let img = m.top.apply_iter(&u, 5);
            assert!(patch::contains_faces(&img, &u), "t={t} {ty:?}");
        }
    }
}

#[test]
fn touching_seed_is_surrounded() {
    let m = sigma(0);
    let u = at_origin(5, &[[3, 4], [3, 5], [4, 5]]);
    let s = geometry::surrounds(&m, &u, 15).unwrap();
    eprintln!("{s:?}");
    assert!(s.surrounds);
}

#[test]
fn non_projecting_family_fails_s1() {
    let m = Model::new(families::non_projecting(2)).unwrap();
    let img = m.top.image_chain(&[2, 4]);
    let pw = geometry::projects_well(&m, &img, 1e-9).unwrap();
    assert!(!pw.holds);
    let s1 = nice::check_s1(&m).unwrap();
    assert!(!s1.holds && !s1.witnesses.is_empty());
}

#[test]
fn sigma_zero_is_nice() {
    let m = sigma(0);
    let r = nice::check_nice(&m).unwrap();
    let s2 = r.s2.as_ref().unwrap();
    eprintln!("R = {} offsets {} pairs {} failures {:?}", s2.radius, s2.offsets, s2.pairs_checked, &s2.failures[..s2.failures.len().min(3)]);
    assert!(r.nice);
}

#[test]
fn periodic_elements() {
    let m = sigma(0);
    let c = geometry::periodic_candidates(&m).unwrap();
    for e in &c {
        eprintln!("{} {:?} covol {:.4} area {:.4} tiles {}", e.kind, e.faces, e.covolume, e.area, e.tiles);
    }
    let p = c.iter().find(|e| e.faces == vec![vec![2, 3], vec![2, 4], vec![3, 4]]).unwrap();
    assert!(p.tiles);
}
