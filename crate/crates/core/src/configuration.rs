//! Configuration posets: the cyclic-polytope model for the circle, Betti
//! numbers for the 2-sphere through duality with the mod 2 cohomology of
//! unordered configuration spaces of the plane, and related bounds.

use std::collections::{BTreeMap, HashMap};

use num_integer::binomial;

use crate::calculus::SphereWedge;
use crate::complex::cyclic_polytope_boundary;
use crate::error::{Error, Result};
use crate::homology::{reduced_homology, Coefficients, HomologyProfile};
use crate::poset::Generator;

/// Number of multisets of powers of two (`1, 2, 4, ...`) with exactly
/// `parts` members summing to `total`.
pub fn binary_partitions_with_parts(total: u64, parts: u64) -> u64 {
    let mut memo = HashMap::new();
    let max_power = if total == 0 { 1 } else { 1u64 << (63 - total.leading_zeros()) };
    count_parts(total, max_power, parts, &mut memo)
}

// Parts are taken in nonincreasing order, each at most `max_power`.
fn count_parts(remaining: u64, max_power: u64, parts: u64, memo: &mut HashMap<(u64, u64, u64), u64>) -> u64 {
    if parts == 0 {
        return u64::from(remaining == 0);
    }
    if remaining < parts || max_power == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&(remaining, max_power, parts)) {
        return v;
    }
    let mut total = 0;
    let mut p = max_power;
    loop {
        if p <= remaining {
            total += count_parts(remaining - p, p, parts - 1, memo);
        }
        if p == 1 {
            break;
        }
        p /= 2;
    }
    memo.insert((remaining, max_power, parts), total);
    total
}

/// Dimension over Z/2 of `H^k(B(R^2, n))`: the number of ways to write `n`
/// as an unordered sum of `n - k` powers of two.
pub fn fuchs_dimension(n: u64, k: i64) -> u64 {
    if k < 0 || k as u64 >= n {
        return 0;
    }
    binary_partitions_with_parts(n, n - k as u64)
}

/// Mod 2 cohomology dimensions of `B(R^2, n)` by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuchsTable {
    pub n: u64,
    pub dims: BTreeMap<u64, u64>,
}

impl FuchsTable {
    pub fn new(n: u64) -> Self {
        FuchsTable {
            n,
            dims: (0..n).map(|k| (k, fuchs_dimension(n, k as i64))).collect(),
        }
    }

    pub fn records(&self) -> Vec<String> {
        self.dims.iter().map(|(k, d)| format!("dim {k} {d}")).collect()
    }
}

/// Predicted mod 2 reduced Betti numbers of the order complex of
/// `exp_n(S^m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedBetti {
    pub n: u64,
    pub m: u64,
    /// Nonzero ranks only.
    pub betti: BTreeMap<u64, u64>,
}

impl PredictedBetti {
    pub fn rank(&self, degree: u64) -> u64 {
        self.betti.get(&degree).copied().unwrap_or(0)
    }

    /// Exactly one nonzero reduced rank.
    pub fn sphere_like(&self) -> bool {
        self.betti.len() == 1
    }

    /// Betti lines from the top degree down, then the verdict.
    pub fn records(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .betti
            .iter()
            .rev()
            .map(|(p, r)| format!("betti {p} {r}"))
            .collect();
        out.push(format!(
            "verdict {}",
            if self.sphere_like() { "sphere-like" } else { "not-sphere" }
        ));
        out
    }
}

/// `b_p = dim H^{3n-p-1}(B(R^2, n); Z/2)` for the order complex of `exp_n(S^2)`.
pub fn predicted_betti_exp2(n: u64) -> Result<PredictedBetti> {
    if n < 1 {
        return Err(Error::InvalidParameters("exp2-betti needs n >= 1".into()));
    }
    let top = 3 * n - 1;
    let betti: BTreeMap<u64, u64> = (0..=top)
        .map(|p| (p, fuchs_dimension(n, top as i64 - p as i64)))
        .filter(|&(_, r)| r > 0)
        .collect();
    let predicted = PredictedBetti { n, m: 2, betti };
    if n >= 2 {
        assert!(
            predicted.rank(top) > 0 && predicted.rank(top - 1) > 0 && !predicted.sphere_like(),
            "duality prediction lost its two lowest cohomology classes"
        );
    }
    Ok(predicted)
}

/// Lower bound `3n` on the dimension of a Euclidean space admitting an
/// `n`-neighborly embedding of the 2-sphere.
pub fn neighborly_bound(n: u64) -> Result<u64> {
    let predicted = predicted_betti_exp2(n)?;
    assert!(predicted.rank(3 * n - 1) != 0, "top reduced rank vanished");
    Ok(3 * n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleModelReport {
    pub n: usize,
    pub m: usize,
    pub facets: usize,
    pub homology: HomologyProfile,
    pub pseudomanifold: bool,
    pub pass: bool,
}

impl CircleModelReport {
    pub fn records(&self) -> Vec<String> {
        let mut out = vec![format!("facets {}", self.facets)];
        out.extend(self.homology.records().into_iter().skip(1));
        out.push(format!("pseudomanifold {}", self.pseudomanifold));
        out.push(format!("verdict {}", if self.pass { "pass" } else { "fail" }));
        out
    }
}

/// Boundary of the cyclic polytope `C(m, 2n)` must be an integral homology
/// `(2n-1)`-sphere and a pseudomanifold.
pub fn circle_model_check(n: usize, m: usize) -> Result<CircleModelReport> {
    if n < 1 || m < 2 * n + 2 {
        return Err(Error::InvalidParameters(format!(
            "circle model needs n >= 1 and m >= 2n + 2, got n = {n}, m = {m}"
        )));
    }
    let boundary = cyclic_polytope_boundary(m, 2 * n)?;
    let homology = reduced_homology(&boundary, Coefficients::Integers);
    let pseudomanifold = boundary.is_pseudomanifold();
    let pass = pseudomanifold && homology.is_sphere(2 * n as i64 - 1);
    Ok(CircleModelReport {
        n,
        m,
        facets: boundary.facets().len(),
        homology,
        pseudomanifold,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpDiscreteReport {
    pub expected: SphereWedge,
    pub homology: HomologyProfile,
    pub pass: bool,
}

/// The order complex of nonempty subsets of size at most `n` of an `m`-set
/// is a wedge of `C(m-1, n)` spheres of dimension `n - 1`.
pub fn exp_discrete_check(m: usize, n: usize) -> Result<ExpDiscreteReport> {
    let poset = Generator::ExpDiscrete { m, n }.build()?;
    let homology = reduced_homology(&poset.order_complex(), Coefficients::Integers);
    let expected = SphereWedge::spheres(binomial(m - 1, n) as u64, (n - 1) as u32);
    let pass = homology == expected.homology_profile(Coefficients::Integers);
    Ok(ExpDiscreteReport {
        expected,
        homology,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive oracle: nonincreasing sequences of powers of two.
    fn enumerate(total: u64, max: u64) -> Vec<Vec<u64>> {
        if total == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        let mut p = 1;
        while p <= max.min(total) {
            for mut rest in enumerate(total - p, p) {
                rest.push(p);
                out.push(rest);
            }
            p *= 2;
        }
        out
    }

    #[test]
    fn fuchs_examples() {
        assert_eq!(fuchs_dimension(3, 0), 1);
        assert_eq!(fuchs_dimension(3, 2), 0);
        assert_eq!(fuchs_dimension(4, 3), 1);
        assert_eq!(fuchs_dimension(4, 4), 0);
        assert_eq!(fuchs_dimension(4, -1), 0);
    }

    #[test]
    fn fuchs_matches_enumeration() {
        for n in 1..=30u64 {
            let all = enumerate(n, n);
            let total: u64 = (0..n as i64).map(|k| fuchs_dimension(n, k)).sum();
            assert_eq!(total, all.len() as u64, "n = {n}");
            for k in 0..n {
                let count = all.iter().filter(|v| v.len() as u64 == n - k).count() as u64;
                assert_eq!(fuchs_dimension(n, k as i64), count);
            }
            assert_eq!(fuchs_dimension(n, n as i64 - 1), u64::from(n.is_power_of_two()));
            assert_eq!(fuchs_dimension(n, 0), 1);
        }
    }

    #[test]
    fn exp2_betti_examples() {
        let one = predicted_betti_exp2(1).unwrap();
        assert_eq!(one.betti, BTreeMap::from([(2, 1)]));
        assert!(one.sphere_like());

        let two = predicted_betti_exp2(2).unwrap();
        assert_eq!(two.betti, BTreeMap::from([(4, 1), (5, 1)]));
        assert_eq!(two.records(), vec!["betti 5 1", "betti 4 1", "verdict not-sphere"]);

        let three = predicted_betti_exp2(3).unwrap();
        assert_eq!(three.betti, BTreeMap::from([(7, 1), (8, 1)]));
    }

    #[test]
    fn neighborly() {
        assert_eq!(neighborly_bound(1).unwrap(), 3);
        assert_eq!(neighborly_bound(2).unwrap(), 6);
        assert_eq!(neighborly_bound(5).unwrap(), 15);
        assert!(neighborly_bound(0).is_err());
    }

    #[test]
    fn circle_models() {
        let pentagon = circle_model_check(1, 5).unwrap();
        assert_eq!(pentagon.facets, 5);
        assert!(pentagon.pass);
        assert!(circle_model_check(2, 6).unwrap().pass);
        assert!(circle_model_check(3, 8).unwrap().pass);
        assert!(circle_model_check(2, 5).is_err());
    }

    #[test]
    fn exp_discrete_examples() {
        let r = exp_discrete_check(4, 2).unwrap();
        assert_eq!(r.homology.betti(1), 3);
        assert!(r.pass);
        assert_eq!(exp_discrete_check(3, 1).unwrap().homology.betti(0), 2);
        let full = exp_discrete_check(3, 3).unwrap();
        assert!(full.homology.is_acyclic() && full.pass);
    }
}
