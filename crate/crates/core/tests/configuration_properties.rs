use proptest::prelude::*;

use posetop::calculus::exp_circle_type;
use posetop::configuration::{circle_model_check, fuchs_dimension, predicted_betti_exp2, FuchsTable};

/// Binary partitions of `n` counted by number of parts, via the generating
/// product over powers of two.
fn binary_partitions_by_parts(n: usize) -> Vec<u64> {
    // table[s][k]: partitions of s into k parts using the powers seen so far.
    let mut table = vec![vec![0u64; n + 1]; n + 1];
    table[0][0] = 1;
    let mut p = 1;
    while p <= n {
        for s in p..=n {
            for k in 1..=n {
                table[s][k] += table[s - p][k - 1];
            }
        }
        p *= 2;
    }
    table[n].clone()
}

proptest! {
    #[test]
    fn fuchs_dimension_counts_binary_partitions(n in 1usize..=40) {
        let by_parts = binary_partitions_by_parts(n);
        for k in 0..n {
            prop_assert_eq!(fuchs_dimension(n as u64, k as i64), by_parts[n - k]);
        }
        let total: u64 = FuchsTable::new(n as u64).dims.values().sum();
        prop_assert_eq!(total, by_parts.iter().sum::<u64>());
        prop_assert_eq!(fuchs_dimension(n as u64, n as i64 - 1), u64::from(n.is_power_of_two()));
    }

    #[test]
    fn exp2_prediction_has_two_low_classes(n in 2u64..=24) {
        let p = predicted_betti_exp2(n).unwrap();
        prop_assert_eq!((p.rank(3 * n - 1), p.rank(3 * n - 2)), (1, 1));
        prop_assert!(!p.sphere_like());
    }
}

#[test]
fn circle_model_verdict_is_independent_of_m() {
    for n in 1..=3usize {
        let verdicts: Vec<_> = (2 * n + 2..=2 * n + 6)
            .map(|m| {
                let r = circle_model_check(n, m).unwrap();
                (r.pass, r.homology.clone())
            })
            .collect();
        assert!(verdicts.iter().all(|v| v == &verdicts[0]), "n = {n}");
        assert!(verdicts[0].0);
        // Agrees with the symbolic type of the configuration poset.
        assert_eq!(
            verdicts[0].1,
            exp_circle_type(n as u32).unwrap().homology_profile(posetop::Coefficients::Integers)
        );
    }
}
