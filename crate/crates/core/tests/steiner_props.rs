use proptest::prelude::*;
use ssb_lab::steiner::{
    check_fermat_condition, residual_symmetry, solve_steiner, unit_square, FermatCheck, OptimizerOptions, Point,
};
use ssb_lab::symmetry::dihedral_group;
use ssb_lab::tolerances::{FERMAT, NETWORK_MATCH};

fn dist(a: Point, b: Point) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Minimum spanning tree length by brute force over all spanning trees.
fn mst_length(pts: &[Point]) -> f64 {
    let n = pts.len();
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << edges.len()) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut acyclic = true;
        let mut len = 0.0;
        for (e, &(i, j)) in edges.iter().enumerate() {
            if mask & (1 << e) != 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a == b {
                    acyclic = false;
                }
                parent[a] = b;
                len += dist(pts[i], pts[j]);
            }
        }
        if acyclic {
            best = best.min(len);
        }
    }
    best
}

fn isometry(p: Point, angle: f64, shift: Point, scale: f64) -> Point {
    let (s, c) = angle.sin_cos();
    [
        scale * (c * p[0] - s * p[1]) + shift[0],
        scale * (s * p[0] + c * p[1]) + shift[1],
    ]
}

fn few_restarts() -> OptimizerOptions {
    OptimizerOptions {
        restarts: 4,
        ..Default::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn square_solutions_are_invariant_under_similarity(
        angle in -3.2..3.2f64,
        dx in -5.0..5.0f64,
        dy in -5.0..5.0f64,
        scale in 0.2..5.0f64,
    ) {
        let square: Vec<Point> = unit_square(1.0).into_iter().map(|p| isometry(p, angle, [dx, dy], scale)).collect();
        let sols = solve_steiner(&square, &few_restarts()).unwrap();
        prop_assert_eq!(sols.len(), 2);
        for s in &sols {
            prop_assert!((s.total_length - scale * (1.0 + 3f64.sqrt())).abs() < 1e-9 * scale.max(1.0));
        }
    }

    #[test]
    fn random_terminals_beat_or_match_spanning_trees(
        pts in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 3..=4),
    ) {
        let pts: Vec<Point> = pts.into_iter().map(|(x, y)| [x, y]).collect();
        let spread = pts.iter().enumerate().all(|(i, p)| pts[..i].iter().all(|q| dist(*p, *q) > 1e-2));
        prop_assume!(spread);
        let sols = solve_steiner(&pts, &few_restarts()).unwrap();
        let best = sols[0].total_length;
        prop_assert!(best <= mst_length(&pts) + 1e-9);
        // Steiner ratio bound.
        prop_assert!(best >= 3f64.sqrt() / 2.0 * mst_length(&pts) - 1e-9);
        for s in &sols {
            match check_fermat_condition(s, FERMAT) {
                Ok(FermatCheck::Full { satisfied, max_residual }) => prop_assert!(satisfied, "residual {}", max_residual),
                Ok(FermatCheck::NonFull { .. }) | Err(_) => {}
            }
        }
    }
}

#[test]
fn results_do_not_depend_on_seed() {
    let square = unit_square(1.0);
    let reference = solve_steiner(&square, &OptimizerOptions::default()).unwrap();
    for seed in [1, 7, 12345] {
        let opts = OptimizerOptions {
            seed,
            ..Default::default()
        };
        let sols = solve_steiner(&square, &opts).unwrap();
        assert_eq!(sols.len(), reference.len());
        for (a, b) in sols.iter().zip(&reference) {
            assert!((a.total_length - b.total_length).abs() < 1e-9);
            assert!(a.to_config().unwrap().approx_eq(&b.to_config().unwrap(), NETWORK_MATCH));
        }
    }
}

#[test]
fn same_seed_is_bit_identical() {
    let square = unit_square(1.0);
    let a = solve_steiner(&square, &OptimizerOptions::default()).unwrap();
    let b = solve_steiner(&square, &OptimizerOptions::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn solution_set_is_closed_under_d4() {
    let d4 = dihedral_group(4).unwrap();
    let sols = solve_steiner(&unit_square(2.0), &OptimizerOptions::default()).unwrap();
    let configs: Vec<_> = sols.iter().map(|s| s.to_centered_config().unwrap()).collect();
    for c in &configs {
        for g in d4.elements() {
            let image = c.transformed(g);
            assert!(configs.iter().any(|s| s.approx_eq(&image, NETWORK_MATCH)), "{g} leaves the set");
        }
    }
    for s in &sols {
        assert_eq!(residual_symmetry(s, &d4, NETWORK_MATCH).unwrap().order(), 4);
    }
}

#[test]
fn rectangle_has_a_unique_minimizer() {
    // A w x h rectangle with w > h/√3 has minimum length w + √3 h.
    let rect = [[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]];
    let sols = solve_steiner(&rect, &OptimizerOptions::default()).unwrap();
    assert_eq!(sols.len(), 1);
    assert!((sols[0].total_length - (2.0 + 3f64.sqrt())).abs() < 2e-9);
}
