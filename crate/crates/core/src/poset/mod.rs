//! Finite posets stored as a transitively reduced cover relation together with
//! a precomputed reachability table.
//!
//! Elements are kept in lexicographic label order, so two posets built from the
//! same labels and relations are identical values regardless of input order.

mod generate;
mod parse;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub use generate::{generate, Generator};

#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    // below[b] has bit a set iff a <= b; above[a] has bit b set iff a <= b.
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
    upper_covers: Vec<Vec<usize>>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset")
            .field("elements", &self.labels)
            .field("covers", &self.cover_labels())
            .finish()
    }
}

impl FinitePoset {
    /// Builds a poset from labels and arbitrary strict relations `a < b`.
    ///
    /// Relations may be redundant; the stored cover relation is their
    /// transitive reduction.
    pub fn from_relations<S, I, R>(labels: I, relations: R) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = S>,
        R: IntoIterator<Item = (S, S)>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut position = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if position.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut pairs = Vec::new();
        for (a, b) in relations {
            let (a, b): (String, String) = (a.into(), b.into());
            let ia = *position.get(&a).ok_or_else(|| Error::UnknownLabel(a.clone()))?;
            let ib = *position.get(&b).ok_or_else(|| Error::UnknownLabel(b.clone()))?;
            pairs.push((ia, ib));
        }
        Self::from_index_pairs(labels, &pairs)
    }

    /// Builds a poset whose strict order is given by a predicate on positions
    /// in `labels`. The predicate must already describe a strict partial order
    /// up to transitivity.
    pub(crate) fn from_strict_fn(
        labels: Vec<String>,
        less: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = labels.len();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && less(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Self::from_index_pairs(labels, &pairs)
    }

    fn from_index_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        // Canonical order: sort labels, remap pairs.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let mut new_pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_pos[old] = new;
        }
        let labels: Vec<String> = order.iter().map(|&i| labels[i].clone()).collect();

        // strict[a] = set of b with a < b, closed transitively.
        let mut strict = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in pairs {
            strict[new_pos[a]].insert(new_pos[b]);
        }
        for k in 0..n {
            let row_k = strict[k].clone();
            for row in strict.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| strict[a].contains(a)) {
            return Err(Error::Cycle(labels[a].clone()));
        }

        let mut above = strict;
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            for b in above[a].ones() {
                below[b].insert(a);
            }
        }
        let mut covers = Vec::new();
        let mut upper_covers = vec![Vec::new(); n];
        for a in 0..n {
            for b in above[a].ones() {
                if above[a].is_disjoint(&below[b]) {
                    covers.push((a, b));
                    upper_covers[a].push(b);
                }
            }
        }
        for a in 0..n {
            above[a].insert(a);
            below[a].insert(a);
        }
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Ok(FinitePoset {
            labels,
            index,
            below,
            above,
            covers,
            upper_covers,
        })
    }

    pub fn empty() -> Self {
        Self::from_index_pairs(Vec::new(), &[]).expect("empty poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Cover pairs `(a, b)` by element index, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_labels(&self) -> Vec<(&str, &str)> {
        self.covers
            .iter()
            .map(|&(a, b)| (self.labels[a].as_str(), self.labels[b].as_str()))
            .collect()
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Elements `b` with `a <= b`.
    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.above[a]
    }

    /// Elements `b` with `b <= a`.
    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.below[a]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.below[a].count_ones(..) == 1)
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.above[a].count_ones(..) == 1)
            .collect()
    }

    /// Indices sorted so that every element comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&a| (self.below[a].count_ones(..), a));
        order
    }

    /// Greatest common lower bound, if one exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let mut common = self.below[a].clone();
        common.intersect_with(&self.below[b]);
        common.ones().find(|&m| common.is_subset(&self.below[m]))
    }

    /// Least common upper bound, if one exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let mut common = self.above[a].clone();
        common.intersect_with(&self.above[b]);
        common.ones().find(|&m| common.is_subset(&self.above[m]))
    }

    /// Induced subposet on the elements accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> FinitePoset {
        let kept: Vec<usize> = (0..self.len()).filter(|&a| keep(a)).collect();
        let labels = kept.iter().map(|&a| self.labels[a].clone()).collect();
        let mut pairs = Vec::new();
        for (i, &a) in kept.iter().enumerate() {
            for (j, &b) in kept.iter().enumerate() {
                if self.less(a, b) {
                    pairs.push((i, j));
                }
            }
        }
        Self::from_index_pairs(labels, &pairs).expect("induced subposet of a poset")
    }

    /// Same elements with the order reversed.
    pub fn dual(&self) -> FinitePoset {
        let pairs: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        Self::from_index_pairs(self.labels.clone(), &pairs).expect("dual of a poset")
    }

    /// Cartesian product with the componentwise order; labels are `(a,b)`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let m = other.len();
        let labels = (0..self.len() * m)
            .map(|i| format!("({},{})", self.labels[i / m], other.labels[i % m]))
            .collect();
        Self::from_strict_fn(labels, |i, j| {
            self.leq(i / m, j / m) && other.leq(i % m, j % m)
        })
        .expect("product of posets")
    }

    /// Open cones `(P_{<y}, P_{>y})`.
    pub fn cones(&self, y: &str) -> Result<(FinitePoset, FinitePoset)> {
        let y = self.index_of(y)?;
        Ok((
            self.restrict(|a| self.less(a, y)),
            self.restrict(|a| self.less(y, a)),
        ))
    }

    pub fn is_antichain<S: AsRef<str>>(&self, set: &[S]) -> Result<bool> {
        Ok(self.antichain_witness(set)?.is_none())
    }

    /// First comparable pair inside `set`, if any.
    pub fn antichain_witness<S: AsRef<str>>(&self, set: &[S]) -> Result<Option<(String, String)>> {
        let idx = set
            .iter()
            .map(|s| self.index_of(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        for (i, &a) in idx.iter().enumerate() {
            for &b in &idx[i + 1..] {
                if a != b && self.comparable(a, b) {
                    return Ok(Some((self.labels[a].clone(), self.labels[b].clone())));
                }
            }
        }
        Ok(None)
    }

    /// The order complex: vertices are elements, faces are chains.
    pub fn order_complex(&self) -> SimplicialComplex {
        let mut facets = Vec::new();
        let mut path = Vec::new();
        for start in self.minimal_elements() {
            self.extend_chains(start, &mut path, &mut facets);
        }
        SimplicialComplex::from_maximal_index_facets(self.labels.clone(), facets)
    }

    fn extend_chains(&self, a: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        path.push(a);
        if self.upper_covers[a].is_empty() {
            let mut facet = path.clone();
            facet.sort_unstable();
            out.push(facet);
        } else {
            for &b in &self.upper_covers[a] {
                self.extend_chains(b, path, out);
            }
        }
        path.pop();
    }

    /// Serializes to the `.poset` text format (covers only).
    pub fn to_poset_text(&self) -> String {
        let mut out = format!("elements: {}\n", self.labels.join(" "));
        for (a, b) in self.cover_labels() {
            out.push_str(&format!("{a} < {b}\n"));
        }
        out
    }
}

/// A poset with a least element and a greatest element that differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedPoset {
    poset: FinitePoset,
    bottom: usize,
    top: usize,
}

impl BoundedPoset {
    pub fn new(poset: FinitePoset) -> Result<Self> {
        let mins = poset.minimal_elements();
        let maxs = poset.maximal_elements();
        match (mins.as_slice(), maxs.as_slice()) {
            (&[bottom], &[top]) if bottom != top => Ok(BoundedPoset { poset, bottom, top }),
            (&[_], &[_]) => Err(Error::NotBounded("bottom equals top".into())),
            _ => Err(Error::NotBounded(format!(
                "{} minimal and {} maximal elements",
                mins.len(),
                maxs.len()
            ))),
        }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom_label(&self) -> &str {
        self.poset.label(self.bottom)
    }

    pub fn top_label(&self) -> &str {
        self.poset.label(self.top)
    }

    pub fn dual(&self) -> BoundedPoset {
        BoundedPoset {
            poset: self.poset.dual(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// The proper part: everything except the two bounds.
    pub fn truncate(&self) -> FinitePoset {
        self.poset.restrict(|a| a != self.bottom && a != self.top)
    }

    /// Möbius number `mu(bottom, top)`.
    pub fn mobius(&self) -> BigInt {
        MobiusTable::new(&self.poset).value(self.bottom, self.top)
    }

    /// Lattice complements of `z` inside the proper part.
    pub fn complements(&self, z: &str) -> Result<BTreeSet<String>> {
        Ok(self
            .complement_indices(z)?
            .into_iter()
            .map(|x| self.poset.label(x).to_string())
            .collect())
    }

    pub(crate) fn complement_indices(&self, z: &str) -> Result<Vec<usize>> {
        let zi = self.poset.index_of(z)?;
        if zi == self.bottom || zi == self.top {
            return Err(Error::BoundElement(z.to_string()));
        }
        let mut out = Vec::new();
        for x in 0..self.poset.len() {
            if x == self.bottom || x == self.top {
                continue;
            }
            let meet = self.poset.meet(x, zi).ok_or_else(|| Error::MissingMeetOrJoin {
                x: self.poset.label(x).to_string(),
                z: z.to_string(),
                operation: "meet",
            })?;
            let join = self.poset.join(x, zi).ok_or_else(|| Error::MissingMeetOrJoin {
                x: self.poset.label(x).to_string(),
                z: z.to_string(),
                operation: "join",
            })?;
            if meet == self.bottom && join == self.top {
                out.push(x);
            }
        }
        Ok(out)
    }
}

/// Memoized Möbius function of a finite poset, keyed by element pairs.
pub struct MobiusTable<'a> {
    poset: &'a FinitePoset,
    cache: HashMap<(usize, usize), BigInt>,
}

impl<'a> MobiusTable<'a> {
    pub fn new(poset: &'a FinitePoset) -> Self {
        MobiusTable {
            poset,
            cache: HashMap::new(),
        }
    }

    /// `mu(x, y)`, zero when `x` is not below `y`.
    pub fn value(&mut self, x: usize, y: usize) -> BigInt {
        if let Some(v) = self.cache.get(&(x, y)) {
            return v.clone();
        }
        if !self.poset.leq(x, y) {
            return BigInt::zero();
        }
        // Fill mu(x, .) over the interval [x, y] in a linear extension order.
        let mut interval = self.poset.up_set(x).clone();
        interval.intersect_with(self.poset.down_set(y));
        let order: Vec<usize> = self
            .poset
            .linear_extension()
            .into_iter()
            .filter(|&z| interval.contains(z))
            .collect();
        for &z in &order {
            if self.cache.contains_key(&(x, z)) {
                continue;
            }
            let v = if z == x {
                BigInt::one()
            } else {
                let mut sum = BigInt::zero();
                for w in self.poset.down_set(z).ones() {
                    if w != z && self.poset.leq(x, w) {
                        sum += &self.cache[&(x, w)];
                    }
                }
                -sum
            };
            self.cache.insert((x, z), v);
        }
        self.cache[&(x, y)].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bounded(kind: Generator) -> BoundedPoset {
        BoundedPoset::new(kind.build().unwrap()).unwrap()
    }

    #[test]
    fn two_element_chain() {
        let p = FinitePoset::parse("elements: a b\na < b").unwrap();
        assert_eq!(p.cover_labels(), vec![("a", "b")]);
    }

    #[test]
    fn redundant_relation_is_reduced() {
        let p = FinitePoset::parse("elements: a b c\na < b\na < c\nb < c").unwrap();
        assert_eq!(p.cover_labels(), vec![("a", "b"), ("b", "c")]);
        let a = p.index_of("a").unwrap();
        let c = p.index_of("c").unwrap();
        assert!(p.less(a, c));
    }

    #[test]
    fn reflexive_relation_is_a_cycle() {
        assert_eq!(
            FinitePoset::parse("elements: a\na < a"),
            Err(Error::Cycle("a".into()))
        );
        assert!(matches!(
            FinitePoset::parse("elements: a b\na < b\nb < a"),
            Err(Error::Cycle(_))
        ));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            FinitePoset::parse("elements: a a"),
            Err(Error::DuplicateLabel("a".into()))
        );
        assert_eq!(
            FinitePoset::parse("elements: a\na < b"),
            Err(Error::UnknownLabel("b".into()))
        );
    }

    #[test]
    fn truncation() {
        let b3 = bounded(Generator::Boolean(3)).truncate();
        assert_eq!(b3.len(), 6);
        let c3 = bounded(Generator::Chain(3)).truncate();
        assert_eq!(c3.labels(), &["1".to_string()]);
        assert!(bounded(Generator::Boolean(1)).truncate().is_empty());
    }

    #[test]
    fn mobius_values() {
        assert_eq!(bounded(Generator::Boolean(3)).mobius(), BigInt::from(-1));
        assert_eq!(bounded(Generator::Chain(3)).mobius(), BigInt::from(0));
        assert_eq!(bounded(Generator::Partition(4)).mobius(), BigInt::from(-6));
        assert_eq!(bounded(Generator::Chain(2)).mobius(), BigInt::from(-1));
    }

    #[test]
    fn complements_in_small_lattices() {
        let b3 = bounded(Generator::Boolean(3));
        let co: Vec<String> = b3.complements("{1}").unwrap().into_iter().collect();
        assert_eq!(co, vec!["{2,3}".to_string()]);

        let p3 = bounded(Generator::Partition(3));
        let co: Vec<String> = p3.complements("12|3").unwrap().into_iter().collect();
        assert_eq!(co, vec!["13|2".to_string(), "1|23".to_string()]);

        let c3 = bounded(Generator::Chain(3));
        assert!(c3.complements("1").unwrap().is_empty());
        assert_eq!(c3.complements("0"), Err(Error::BoundElement("0".into())));
    }

    #[test]
    fn missing_join_is_reported() {
        // Two maximal elements below the top with two common lower bounds.
        let p = FinitePoset::parse(
            "elements: 0 a b c d 1\n0 < a\n0 < b\na < c\na < d\nb < c\nb < d\nc < 1\nd < 1",
        )
        .unwrap();
        let p = BoundedPoset::new(p).unwrap();
        assert!(matches!(
            p.complements("a"),
            Err(Error::MissingMeetOrJoin { .. })
        ));
    }

    #[test]
    fn antichains() {
        let b3 = Generator::Boolean(3).build().unwrap();
        assert!(b3.is_antichain(&["{1,2}", "{1,3}", "{2,3}"]).unwrap());
        let c3 = Generator::Chain(3).build().unwrap();
        assert!(!c3.is_antichain(&["0", "2"]).unwrap());
        assert!(c3.is_antichain(&["1"]).unwrap());
        assert!(c3.is_antichain(&["x"]).is_err());
    }

    #[test]
    fn cones_of_elements() {
        let b3 = bounded(Generator::Boolean(3)).truncate();
        let (lo, hi) = b3.cones("{1,2}").unwrap();
        assert_eq!(lo.labels(), &["{1}".to_string(), "{2}".to_string()]);
        assert!(lo.covers().is_empty());
        assert!(hi.is_empty());

        let c3 = Generator::Chain(3).build().unwrap();
        let (lo, hi) = c3.cones("1").unwrap();
        assert_eq!((lo.len(), hi.len()), (1, 1));

        let p4 = Generator::Partition(4).build().unwrap();
        let (lo, hi) = p4.cones("12|3|4").unwrap();
        assert_eq!(lo.len(), 1); // the bottom, since cones are taken in the full lattice
        assert_eq!(hi.len(), 4);
    }

    #[test]
    fn order_complexes() {
        let c3 = Generator::Chain(3).build().unwrap().order_complex();
        assert_eq!(c3.facets().len(), 1);
        assert_eq!(c3.dimension(), Some(2));

        let anti = FinitePoset::parse("elements: a b c").unwrap().order_complex();
        assert_eq!(anti.facets().len(), 3);
        assert_eq!(anti.dimension(), Some(0));

        let hexagon = bounded(Generator::Boolean(3)).truncate().order_complex();
        assert_eq!(hexagon.vertices().len(), 6);
        assert_eq!(hexagon.facets().len(), 6);
        assert!(hexagon.facets().iter().all(|f| f.len() == 2));

        assert!(FinitePoset::empty().order_complex().is_empty());
    }

    #[test]
    fn lattice_operations() {
        let b2 = Generator::Boolean(2).build().unwrap();
        let a = b2.index_of("{1}").unwrap();
        let b = b2.index_of("{2}").unwrap();
        assert_eq!(b2.label(b2.meet(a, b).unwrap()), "{}");
        assert_eq!(b2.label(b2.join(a, b).unwrap()), "{1,2}");
    }
}
