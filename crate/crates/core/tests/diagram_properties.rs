use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use posetop::diagram::{cylinder_check, random_chain_diagram};
use posetop::random::random_poset;
use posetop::{FinitePoset, PosetDiagram};

fn strip_level(label: &str) -> &str {
    label.rsplit_once('@').unwrap().0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn point_base_gives_back_the_fiber(seed in any::<u64>(), n in 1usize..8) {
        let fiber = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.4, "x");
        let d = PosetDiagram::constant(FinitePoset::parse("elements: q").unwrap(), fiber.clone());
        let g = d.grothendieck().unwrap();
        let relabelled: Vec<(String, String)> = g
            .cover_labels()
            .into_iter()
            .map(|(a, b)| (strip_level(a).to_string(), strip_level(b).to_string()))
            .collect();
        let back = FinitePoset::from_relations(fiber.labels().to_vec(), relabelled).unwrap();
        prop_assert_eq!(back, fiber);
    }

    #[test]
    fn levels_recover_fibers(seed in any::<u64>()) {
        let d = random_chain_diagram(&mut ChaCha8Rng::seed_from_u64(seed), 5);
        let g = d.grothendieck().unwrap();
        for q in ["0", "1"] {
            let suffix = format!("@{q}");
            let level = g.restrict(|i| g.label(i).ends_with(&suffix));
            let fiber = d.fiber(q).unwrap();
            prop_assert_eq!(level.len(), fiber.len());
            for a in 0..level.len() {
                for b in 0..level.len() {
                    let (x, y) = (strip_level(level.label(a)), strip_level(level.label(b)));
                    let (ix, iy) = (fiber.index_of(x).unwrap(), fiber.index_of(y).unwrap());
                    prop_assert_eq!(level.leq(a, b), fiber.leq(ix, iy));
                }
            }
        }
    }

    #[test]
    fn cylinder_homology_is_the_lower_fibers(seed in any::<u64>()) {
        let d = random_chain_diagram(&mut ChaCha8Rng::seed_from_u64(seed), 5);
        prop_assert!(d.validate().passed());
        let r = cylinder_check(&d).unwrap();
        prop_assert!(r.pass, "total {} lower {}", r.total, r.lower);
    }

    #[test]
    fn flatten_equals_grothendieck_on_antichain_fibers(seed in any::<u64>(), sizes in prop::collection::vec(1usize..4, 3)) {
        // Base 0 < 1 < 2 with antichain fibers and arbitrary maps down covers.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = FinitePoset::parse("elements: 0 1 2\n0 < 1 < 2").unwrap();
        let fibers: BTreeMap<String, FinitePoset> = (0..3)
            .map(|q| (q.to_string(), FinitePoset::from_relations((0..sizes[q]).map(|i| format!("e{i}")), []).unwrap()))
            .collect();
        let mut maps = BTreeMap::new();
        for q in 0..2usize {
            let assignment: BTreeMap<String, String> = (0..sizes[q + 1])
                .map(|i| (format!("e{i}"), format!("e{}", rng.random_range(0..sizes[q]))))
                .collect();
            maps.insert((q.to_string(), (q + 1).to_string()), assignment);
        }
        let d = PosetDiagram::new(base, fibers, maps).unwrap();
        prop_assert!(d.validate().passed());
        prop_assert_eq!(d.flatten().unwrap(), d.grothendieck().unwrap());
    }
}

#[test]
fn flatten_and_grothendieck_differ_on_ordered_fibers() {
    let d = PosetDiagram::parse(
        "base: elements: 0 1; 0 < 1\nfiber 0: elements: a b; a < b\nfiber 1: elements: c\nmap 0 1: c->b\n",
    )
    .unwrap();
    let (g, f) = (d.grothendieck().unwrap(), d.flatten().unwrap());
    let (a, c) = (g.index_of("a@0").unwrap(), g.index_of("c@1").unwrap());
    assert!(g.less(a, c));
    assert!(!f.less(f.index_of("a@0").unwrap(), f.index_of("c@1").unwrap()));
}
