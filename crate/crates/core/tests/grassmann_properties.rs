use nalgebra::DMatrix;
use proptest::prelude::*;

use posetop::grassmann::{
    max_principal_angle, orbit_invariance_check, phi, property_battery, slice_representative, COMPARE_TOL,
};
use posetop::SymMatrix64;

fn symmetric(n: usize) -> impl Strategy<Value = SymMatrix64> {
    prop::collection::vec(-10.0f64..10.0, n * n).prop_map(move |v| {
        let m = DMatrix::from_row_slice(n, n, &v);
        SymMatrix64::new((&m + m.transpose()) * 0.5).unwrap()
    })
}

fn sorted_eigenvalues(a: &SymMatrix64) -> Vec<f64> {
    let mut ev: Vec<f64> = a.matrix().clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn flags_are_well_formed(a in (3usize..=5).prop_flat_map(symmetric)) {
        let ev = sorted_eigenvalues(&a);
        prop_assume!(ev.windows(2).all(|w| w[1] - w[0] > 1e-6));
        let f = phi(&a).unwrap();
        prop_assert_eq!(f.levels(), (1..a.order()).collect::<Vec<_>>());
        prop_assert!((f.weight_sum() - 1.0).abs() < 1e-10);
        for (c, w) in f.components.iter().zip(ev.windows(2)) {
            prop_assert!(c.weight > 0.0);
            // Independent weight: gap over spread.
            prop_assert!((c.weight - (w[1] - w[0]) / (ev[ev.len() - 1] - ev[0])).abs() < 1e-9);
            prop_assert_eq!(c.basis.rank(1e-8), c.level);
        }
        prop_assert!(f.is_nested(COMPARE_TOL));
    }

    #[test]
    fn flags_are_constant_on_orbits(
        a in (3usize..=5).prop_flat_map(symmetric),
        alpha in 0.05f64..20.0,
        beta in -20.0f64..20.0,
    ) {
        let ev = sorted_eigenvalues(&a);
        prop_assume!(ev.windows(2).all(|w| w[1] - w[0] > 1e-3));
        let r = orbit_invariance_check(&a, alpha, beta).unwrap();
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn slice_is_unique_on_orbits(
        a in (2usize..=5).prop_flat_map(symmetric),
        alpha in 0.05f64..20.0,
        beta in -20.0f64..20.0,
    ) {
        let ev = sorted_eigenvalues(&a);
        prop_assume!(ev[ev.len() - 1] - ev[0] > 1e-3);
        let s = slice_representative(&a).unwrap();
        let t = slice_representative(&a.affine(alpha, beta)).unwrap();
        prop_assert!((s.matrix() - t.matrix()).abs().max() < COMPARE_TOL);
        prop_assert!(s.trace().abs() < 1e-12);
        prop_assert!((s.frobenius_norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn principal_angle_between_coordinate_lines() {
    let x = DMatrix::from_column_slice(2, 1, &[1.0, 0.0]);
    let d = DMatrix::from_column_slice(2, 1, &[std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2]);
    assert!((max_principal_angle(&x, &d) - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    assert!(max_principal_angle(&x, &x) < 1e-15);
}

#[test]
fn seeded_batteries_pass() {
    for n in 3..=5 {
        let r = property_battery(n, 100, 2024 + n as u64).unwrap();
        assert!(r.passed(), "{:?}", r.records());
        assert!(r.max_orbit_deviation < 1e-8 && r.max_slice_deviation < 1e-8);
    }
}
