use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use posetop::complex::{cyclic_polytope_boundary, ridge_degrees, wedge};
use posetop::homology::{even_factor_count, ChainComplexData};
use posetop::random::random_complex;
use posetop::{reduced_homology, Coefficients, PointedComplex, SimplicialComplex};

fn complex(seed: u64) -> SimplicialComplex {
    random_complex(&mut ChaCha8Rng::seed_from_u64(seed), 8)
}

fn nonempty(seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let k = random_complex(&mut rng, 8);
        if !k.is_empty() {
            return k;
        }
    }
}

/// Rank of a 0/1 matrix over Z/2 by row reduction on `Vec<bool>`.
fn rank_mod2(mut rows: Vec<Vec<bool>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) {
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && rows[r][c] {
                    let pivot = rows[rank].clone();
                    rows[r].iter_mut().zip(pivot).for_each(|(x, y)| *x ^= y);
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Reduced Z/2 Betti numbers from dense boundary matrices over all faces,
/// indexed by degree + 1.
fn betti_mod2_oracle(k: &SimplicialComplex) -> Vec<usize> {
    let mut faces: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    faces.extend(k.faces_by_dimension());
    let ranks: Vec<usize> = (1..faces.len())
        .map(|d| {
            let rows = faces[d]
                .iter()
                .map(|f| {
                    faces[d - 1]
                        .iter()
                        .map(|g| g.len() + 1 == f.len() && g.iter().all(|v| f.contains(v)))
                        .collect()
                })
                .collect();
            rank_mod2(rows)
        })
        .collect();
    (0..faces.len())
        .map(|d| faces[d].len() - ranks.get(d).copied().unwrap_or(0) - if d > 0 { ranks[d - 1] } else { 0 })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_of_boundary_vanishes(seed in any::<u64>()) {
        let k = complex(seed);
        prop_assert!(ChainComplexData::from_complex(&k).unwrap().check_boundary_squared().is_ok());
    }

    #[test]
    fn mod2_homology_matches_dense_oracle(seed in any::<u64>()) {
        let k = complex(seed);
        let h = reduced_homology(&k, Coefficients::Mod2);
        for (i, &b) in betti_mod2_oracle(&k).iter().enumerate() {
            prop_assert_eq!(h.betti(i as i64 - 1), b);
        }
    }

    #[test]
    fn euler_characteristic_from_either_ring(seed in any::<u64>()) {
        let k = complex(seed);
        for coeff in [Coefficients::Integers, Coefficients::Mod2] {
            prop_assert_eq!(reduced_homology(&k, coeff).reduced_euler_characteristic(), k.reduced_euler_characteristic());
        }
    }

    #[test]
    fn universal_coefficients(seed in any::<u64>()) {
        let k = complex(seed);
        let (z, z2) = (reduced_homology(&k, Coefficients::Integers), reduced_homology(&k, Coefficients::Mod2));
        for d in -1..=z2.max_degree().max(z.max_degree()) + 1 {
            let t = |d: i64| even_factor_count(z.torsion(d));
            prop_assert!(z2.betti(d) >= z.betti(d));
            prop_assert_eq!(z2.betti(d), z.betti(d) + t(d) + t(d - 1));
        }
    }

    #[test]
    fn join_kunneth_mod2(a in any::<u64>(), b in any::<u64>()) {
        let (k, l) = (complex(a), complex(b));
        let (hk, hl) = (reduced_homology(&k, Coefficients::Mod2), reduced_homology(&l, Coefficients::Mod2));
        let hj = reduced_homology(&k.join(&l), Coefficients::Mod2);
        let top = hk.max_degree() + hl.max_degree() + 2;
        for deg in -1..=top {
            let expected: usize = (-1..=hk.max_degree()).map(|i| hk.betti(i) * hl.betti(deg - 1 - i)).sum();
            prop_assert_eq!(hj.betti(deg), expected, "degree {}", deg);
        }
    }

    #[test]
    fn suspension_shifts_degrees(seed in any::<u64>()) {
        let k = complex(seed);
        let (h, hs) = (reduced_homology(&k, Coefficients::Integers), reduced_homology(&k.suspension(), Coefficients::Integers));
        for d in -2..=h.max_degree() + 1 {
            prop_assert_eq!(hs.betti(d + 1), h.betti(d));
            prop_assert_eq!(hs.torsion(d + 1), h.torsion(d));
        }
    }

    #[test]
    fn wedge_adds_homology(seeds in prop::collection::vec(any::<u64>(), 1..4)) {
        let parts: Vec<SimplicialComplex> = seeds.iter().map(|&s| nonempty(s)).collect();
        let pointed: Vec<PointedComplex> = parts
            .iter()
            .map(|k| PointedComplex::new(k.clone(), k.vertex(0)).unwrap())
            .collect();
        let w = wedge(&pointed).unwrap().into_complex();
        let hw = reduced_homology(&w, Coefficients::Integers);
        let hs: Vec<_> = parts.iter().map(|k| reduced_homology(k, Coefficients::Integers)).collect();
        for d in -1..=hw.max_degree() + 1 {
            prop_assert_eq!(hw.betti(d), hs.iter().map(|h| h.betti(d)).sum::<usize>());
            let mut torsion: Vec<_> = hs.iter().flat_map(|h| h.torsion(d).to_vec()).collect();
            torsion.sort();
            let mut got = hw.torsion(d).to_vec();
            got.sort();
            prop_assert_eq!(got, torsion);
        }
    }

    #[test]
    fn quotient_euler_characteristic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = nonempty(rng.random());
        // Subcomplex generated by a random subset of the facets.
        let sub: Vec<Vec<&str>> = k.facet_labels().into_iter().filter(|_| rng.random_bool(0.5)).collect();
        let a = SimplicialComplex::from_facets(sub);
        let q = k.quotient_model(&a).unwrap();
        prop_assert_eq!(q.reduced_euler_characteristic(), k.reduced_euler_characteristic() - a.reduced_euler_characteristic());
        prop_assert_eq!(
            reduced_homology(&q, Coefficients::Integers).reduced_euler_characteristic(),
            q.reduced_euler_characteristic()
        );
    }
}

#[test]
fn cyclic_polytopes_are_pseudomanifold_spheres() {
    for d in [2usize, 4, 6] {
        for m in d + 1..=d + 5 {
            let k = cyclic_polytope_boundary(m, d).unwrap();
            assert!(ridge_degrees(&k).values().all(|&c| c == 2), "C({m},{d})");
            assert!(k.is_pseudomanifold());
            let h = reduced_homology(&k, Coefficients::Integers);
            assert!(h.is_sphere(d as i64 - 1), "C({m},{d}): {h}");
            assert!(cyclic_polytope_boundary(m, d + 1).is_err());
            // Odd spheres have vanishing unreduced Euler characteristic.
            assert_eq!(k.reduced_euler_characteristic() + 1, 0);
        }
    }
}
