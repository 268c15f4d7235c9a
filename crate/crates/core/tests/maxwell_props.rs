use num_complex::Complex64;
use proptest::prelude::*;
use ssb_lab::maxwell::{
    discrete_curl, discrete_div, make_helicity_wave, random_static_field, scale_field, ComplexFieldGrid, Snapshots,
    DT_OVER_H,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scale_field_is_pointwise_multiplication(re in -4.0..4.0f64, im in -4.0..4.0f64, seed in 0u64..1000) {
        let z = Complex64::new(re, im);
        prop_assume!(z.norm() > 1e-3);
        let f = random_static_field(8, 2, seed).unwrap();
        let g = scale_field(&f, z).unwrap();
        for (a, b) in f.values().iter().zip(g.values()) {
            for c in 0..3 {
                prop_assert!((z * a[c] - b[c]).norm() <= 1e-15 * (1.0 + b[c].norm()));
            }
        }
    }

    #[test]
    fn residuals_scale_by_modulus(re in -4.0..4.0f64, im in -4.0..4.0f64) {
        let z = Complex64::new(re, im);
        prop_assume!(z.norm() > 1e-3);
        let wave = make_helicity_wave([1.0, 1.0, 2.0]).unwrap();
        let s = Snapshots::of_wave(&wave, 8, DT_OVER_H).unwrap();
        let base = s.residual().unwrap();
        let scaled = s.scaled(z).unwrap().residual().unwrap();
        prop_assert!((scaled.div_norm - z.norm() * base.div_norm).abs() <= 1e-12 * z.norm() * base.div_norm);
        prop_assert!((scaled.evolution_norm - z.norm() * base.evolution_norm).abs()
            <= 1e-12 * z.norm() * base.evolution_norm);
    }
}

#[test]
fn scaling_by_zero_is_rejected() {
    let f = ComplexFieldGrid::zeros(4, 0.0).unwrap();
    assert!(scale_field(&f, Complex64::new(0.0, 0.0)).is_err());
}

#[test]
fn discrete_operators_are_linear() {
    let f = random_static_field(6, 2, 1).unwrap();
    let g = random_static_field(6, 3, 2).unwrap();
    let z = Complex64::new(0.3, -1.7);
    let combined: Vec<[Complex64; 3]> = f
        .values()
        .iter()
        .zip(g.values())
        .map(|(a, b)| [0, 1, 2].map(|c| a[c] + z * b[c]))
        .collect();
    let (df, dg) = (discrete_div(&f), discrete_div(&g));
    let (cf, cg) = (discrete_curl(&f), discrete_curl(&g));
    let (n, step) = (f.n(), f.h());
    let h = ComplexFieldGrid::from_fn(n, 0.0, |x| {
        let [i, j, k] = x.map(|c| (c / step).round() as usize);
        combined[(i * n + j) * n + k]
    })
    .unwrap();
    let (dh, ch) = (discrete_div(&h), discrete_curl(&h));
    for i in 0..dh.len() {
        assert!((dh[i] - (df[i] + z * dg[i])).norm() < 1e-12);
        for c in 0..3 {
            assert!((ch[i][c] - (cf[i][c] + z * cg[i][c])).norm() < 1e-12);
        }
    }
}

#[test]
fn axis_aligned_wave_is_exactly_divergence_free() {
    let wave = make_helicity_wave([0.0, 0.0, 2.0]).unwrap();
    let s = Snapshots::of_wave(&wave, 16, DT_OVER_H).unwrap();
    assert!(s.residual().unwrap().div_norm < 1e-14);
}
