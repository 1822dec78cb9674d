//! Seeded random posets and complexes for property tests and the acceptance
//! battery.

use rand::seq::index::sample;
use rand::Rng;

use crate::complex::SimplicialComplex;
use crate::poset::{BoundedPoset, FinitePoset};

/// Poset on `n` elements `{prefix}0..` where `i < j` is related with
/// probability `density` for `i < j` in index order, then closed.
pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64, prefix: &str) -> FinitePoset {
    let labels: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                relations.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    FinitePoset::from_relations(labels, relations).expect("index order is acyclic")
}

/// Bounded poset with between 3 and `max_elements` elements: a random
/// nonempty interior with a bottom `0` and a top `1` adjoined.
pub fn random_bounded_poset(rng: &mut impl Rng, max_elements: usize) -> BoundedPoset {
    assert!(max_elements >= 3, "need room for two bounds and an interior");
    let interior = rng.random_range(1..=max_elements - 2);
    let density = rng.random_range(0.1..0.7);
    let inner = random_poset(rng, interior, density, "x");
    let mut labels = vec!["0".to_string(), "1".to_string()];
    labels.extend(inner.labels().iter().cloned());
    let mut relations = vec![("0".to_string(), "1".to_string())];
    for x in inner.labels() {
        relations.push(("0".to_string(), x.clone()));
        relations.push((x.clone(), "1".to_string()));
    }
    for (a, b) in inner.cover_labels() {
        relations.push((a.to_string(), b.to_string()));
    }
    let poset = FinitePoset::from_relations(labels, relations).expect("bounded extension is acyclic");
    BoundedPoset::new(poset).expect("0 and 1 bound the poset")
}

/// Poset built in `layers` ranks with edges only between consecutive ranks,
/// plus a nonempty subset of one rank, which is therefore an antichain.
pub fn random_layered_poset(rng: &mut impl Rng, max_elements: usize, layers: usize) -> (FinitePoset, Vec<String>) {
    assert!(layers >= 1 && max_elements >= layers);
    let total = rng.random_range(layers..=max_elements);
    // Every layer gets at least one element.
    let mut sizes = vec![1; layers];
    for _ in layers..total {
        sizes[rng.random_range(0..layers)] += 1;
    }
    let ranks: Vec<Vec<String>> = sizes
        .iter()
        .enumerate()
        .map(|(r, &s)| (0..s).map(|i| format!("r{r}e{i}")).collect())
        .collect();
    let mut relations = Vec::new();
    for w in ranks.windows(2) {
        for a in &w[0] {
            for b in &w[1] {
                if rng.random_bool(0.5) {
                    relations.push((a.clone(), b.clone()));
                }
            }
        }
    }
    let labels: Vec<String> = ranks.iter().flatten().cloned().collect();
    let poset = FinitePoset::from_relations(labels, relations).expect("ranked relation is acyclic");
    let rank = &ranks[rng.random_range(0..layers)];
    let k = rng.random_range(1..=rank.len());
    let mut antichain: Vec<String> = sample(rng, rank.len(), k).into_iter().map(|i| rank[i].clone()).collect();
    antichain.sort();
    (poset, antichain)
}

/// Complex on at most `max_vertices` vertices `v0..` generated by a few random
/// faces. May be empty.
pub fn random_complex(rng: &mut impl Rng, max_vertices: usize) -> SimplicialComplex {
    let n = rng.random_range(0..=max_vertices);
    if n == 0 {
        return SimplicialComplex::empty();
    }
    let faces = rng.random_range(1..=6);
    let generators: Vec<Vec<String>> = (0..faces)
        .map(|_| {
            let size = rng.random_range(1..=n.min(4));
            sample(rng, n, size).into_iter().map(|i| format!("v{i}")).collect()
        })
        .collect();
    SimplicialComplex::from_facets(generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn deterministic_for_a_seed() {
        let a = random_bounded_poset(&mut ChaCha8Rng::seed_from_u64(5), 10);
        let b = random_bounded_poset(&mut ChaCha8Rng::seed_from_u64(5), 10);
        assert_eq!(a.poset(), b.poset());
    }

    #[test]
    fn sizes_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert!(random_bounded_poset(&mut rng, 10).poset().len() <= 10);
            let (p, c) = random_layered_poset(&mut rng, 30, 4);
            assert!(p.len() <= 30);
            assert!(p.is_antichain(&c).unwrap() && !c.is_empty());
            assert!(random_complex(&mut rng, 8).vertices().len() <= 8);
        }
    }
}
