use proptest::prelude::*;
use ssb_lab::symmetry::{
    compose, cyclic_group, dihedral_group, orbit, stabilizer, verify_group_axioms, z2_group,
    FiniteGroup, OrthoTransform, PointConfig,
};
use ssb_lab::tolerances::{GROUP_ELEMENT_EQ, POINT_MATCH};

fn all_constructed_groups() -> Vec<FiniteGroup> {
    let mut gs = vec![z2_group()];
    for k in 1..=8 {
        gs.push(dihedral_group(k).unwrap());
        gs.push(cyclic_group(k).unwrap());
    }
    let d4 = dihedral_group(4).unwrap();
    let square = PointConfig::from_points(
        2,
        vec![vec![-1.0, -1.0], vec![1.0, -1.0], vec![1.0, 1.0], vec![-1.0, 1.0]],
    )
    .unwrap();
    let line = PointConfig::from_points(2, vec![vec![-1.0, 0.0], vec![1.0, 0.0]]).unwrap();
    let off_axis = PointConfig::from_points(2, vec![vec![0.3, 0.1]]).unwrap();
    for c in [&square, &line, &off_axis] {
        gs.push(stabilizer(&d4, c, POINT_MATCH));
    }
    gs
}

#[test]
fn every_constructed_group_satisfies_the_axioms() {
    for g in all_constructed_groups() {
        let report = verify_group_axioms(g.elements(), GROUP_ELEMENT_EQ);
        assert!(report.is_ok(), "order {}: {:?}", g.order(), report.violations);
    }
}

#[test]
fn dihedral_orders() {
    for k in 1..=12 {
        assert_eq!(dihedral_group(k).unwrap().order(), 2 * k);
        assert_eq!(cyclic_group(k).unwrap().order(), k);
    }
}

fn point() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0..3.0f64, 2)
}

proptest! {
    #[test]
    fn orbit_stabilizer_theorem(
        pts in prop::collection::vec(point(), 1..5),
        k in 2usize..7,
    ) {
        // Reject configurations with near-coincident points.
        let ok = pts.iter().enumerate().all(|(i, p)| {
            pts[..i].iter().all(|q| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt() > 1e-3)
        });
        prop_assume!(ok);
        let c = PointConfig::from_points(2, pts).unwrap();
        let g = dihedral_group(k).unwrap();
        let stab = stabilizer(&g, &c, POINT_MATCH);
        let orb = orbit(&g, &c, POINT_MATCH);
        prop_assert_eq!(stab.order() * orb.len(), g.order());
        prop_assert!(verify_group_axioms(stab.elements(), GROUP_ELEMENT_EQ).is_ok());
    }

    #[test]
    fn rotations_compose_by_adding_angles(a in -7.0..7.0f64, b in -7.0..7.0f64) {
        let ab = compose(&OrthoTransform::rotation_2d(a), &OrthoTransform::rotation_2d(b)).unwrap();
        prop_assert!(ab.approx_eq(&OrthoTransform::rotation_2d(a + b), 1e-12));
    }

    #[test]
    fn reflections_are_involutions(a in -4.0..4.0f64) {
        let r = OrthoTransform::reflection_2d(a);
        let rr = compose(&r, &r).unwrap();
        prop_assert!(rr.approx_eq(&OrthoTransform::identity(2), 1e-12));
        prop_assert!(r.determinant() < 0.0);
    }

    #[test]
    fn transforms_preserve_distances(a in -4.0..4.0f64, p in point(), q in point()) {
        let t = OrthoTransform::rotation_2d(a);
        let (tp, tq) = (t.apply(&p), t.apply(&q));
        let d = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
        let td = ((tp[0] - tq[0]).powi(2) + (tp[1] - tq[1]).powi(2)).sqrt();
        prop_assert!((d - td).abs() < 1e-12);
    }
}
