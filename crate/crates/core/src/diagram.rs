//! Diagrams of finite posets over a finite base poset.
//!
//! A diagram assigns a poset `D_q` to every `q` in the base `Q` and a monotone
//! map `d_{qq'}: D_{q'} -> D_q` to every `q <= q'`. Maps run downward. Only the
//! maps for base covers must be supplied; the rest are composed along cover
//! paths, and any extra maps supplied are checked against those composites.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use crate::error::{Error, Result};
use crate::homology::{reduced_homology, Coefficients, HomologyProfile};
use crate::poset::FinitePoset;
use crate::random::random_poset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetDiagram {
    base: FinitePoset,
    fibers: Vec<FinitePoset>,
    given: BTreeMap<(usize, usize), Vec<usize>>,
    // Map for every base pair q <= q', keyed (q, q').
    table: HashMap<(usize, usize), Vec<usize>>,
}

/// A violated diagram axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A supplied `d_{qq}` moves `x`.
    Identity { q: String, x: String },
    /// `d_{qq'}(d_{q'q''}(x)) != d_{qq''}(x)`.
    Composition {
        q: String,
        q1: String,
        q2: String,
        x: String,
    },
    /// `x <= y` in `D_{q'}` but their images under `d_{qq'}` are not ordered.
    Monotonicity {
        q: String,
        q1: String,
        x: String,
        y: String,
    },
}

impl Violation {
    pub fn record(&self) -> String {
        match self {
            Violation::Identity { q, x } => format!("violation identity {q} {x}"),
            Violation::Composition { q, q1, q2, x } => {
                format!("violation composition {q} {q1} {q2} {x}")
            }
            Violation::Monotonicity { q, q1, x, y } => {
                format!("violation monotone {q} {q1} {x} {y}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub identity: bool,
    pub composition: bool,
    pub monotone: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.identity && self.composition && self.monotone
    }

    pub fn records(&self) -> Vec<String> {
        let mut out = vec![
            format!("identity {}", self.identity),
            format!("composition {}", self.composition),
            format!("monotone {}", self.monotone),
        ];
        out.extend(self.violations.iter().map(Violation::record));
        out
    }
}

impl PosetDiagram {
    /// `maps[(q, q')]` sends each element of `D_{q'}` to an element of `D_q`.
    /// Every base cover needs a map.
    pub fn new(
        base: FinitePoset,
        fibers: BTreeMap<String, FinitePoset>,
        maps: BTreeMap<(String, String), BTreeMap<String, String>>,
    ) -> Result<Self> {
        let mut by_index = Vec::with_capacity(base.len());
        for q in base.labels() {
            let fiber = fibers
                .get(q)
                .ok_or_else(|| Error::InvalidDiagram(format!("no fiber over `{q}`")))?;
            by_index.push(fiber.clone());
        }
        if let Some(extra) = fibers.keys().find(|k| base.index_of(k).is_err()) {
            return Err(Error::InvalidDiagram(format!("fiber over unknown node `{extra}`")));
        }

        let mut given = BTreeMap::new();
        for ((q, q1), assignment) in &maps {
            let (iq, iq1) = (base.index_of(q)?, base.index_of(q1)?);
            if !base.leq(iq, iq1) {
                return Err(Error::InvalidDiagram(format!("map {q} {q1}: `{q}` is not below `{q1}`")));
            }
            let (lower, upper) = (&by_index[iq], &by_index[iq1]);
            let mut image = vec![usize::MAX; upper.len()];
            for (x, y) in assignment {
                let ix = upper
                    .index_of(x)
                    .map_err(|_| Error::InvalidDiagram(format!("map {q} {q1}: `{x}` is not in the fiber over {q1}")))?;
                let iy = lower
                    .index_of(y)
                    .map_err(|_| Error::InvalidDiagram(format!("map {q} {q1}: `{y}` is not in the fiber over {q}")))?;
                image[ix] = iy;
            }
            if let Some(missing) = image.iter().position(|&v| v == usize::MAX) {
                return Err(Error::InvalidDiagram(format!(
                    "map {q} {q1} does not assign `{}`",
                    upper.label(missing)
                )));
            }
            given.insert((iq, iq1), image);
        }
        for &(a, b) in base.covers() {
            if !given.contains_key(&(a, b)) {
                return Err(Error::InvalidDiagram(format!(
                    "missing map for cover {} < {}",
                    base.label(a),
                    base.label(b)
                )));
            }
        }

        let mut diagram = PosetDiagram {
            base,
            fibers: by_index,
            given,
            table: HashMap::new(),
        };
        diagram.compose_table();
        Ok(diagram)
    }

    /// The same fiber over every node with identity maps.
    pub fn constant(base: FinitePoset, fiber: FinitePoset) -> Self {
        let fibers = base.labels().iter().map(|q| (q.clone(), fiber.clone())).collect();
        let id: BTreeMap<String, String> = fiber.labels().iter().map(|x| (x.clone(), x.clone())).collect();
        let maps = base
            .cover_labels()
            .into_iter()
            .map(|(a, b)| ((a.to_string(), b.to_string()), id.clone()))
            .collect();
        PosetDiagram::new(base, fibers, maps).expect("constant diagram is well formed")
    }

    fn compose_table(&mut self) {
        let n = self.base.len();
        let mut table = HashMap::new();
        // Fill from the top of the base down so d_{c q'} is known before d_{q q'}.
        for &q in self.base.linear_extension().iter().rev() {
            for q1 in 0..n {
                if !self.base.leq(q, q1) {
                    continue;
                }
                let map = if let Some(m) = self.given.get(&(q, q1)) {
                    m.clone()
                } else if q == q1 {
                    (0..self.fibers[q].len()).collect()
                } else {
                    let c = *self.base.upper_covers(q).iter().find(|&&c| self.base.leq(c, q1)).expect("q < q1 has a cover on the way");
                    let first: &Vec<usize> = &table[&(c, q1)];
                    let second = &self.given[&(q, c)];
                    first.iter().map(|&y| second[y]).collect()
                };
                table.insert((q, q1), map);
            }
        }
        self.table = table;
    }

    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn fiber(&self, q: &str) -> Result<&FinitePoset> {
        Ok(&self.fibers[self.base.index_of(q)?])
    }

    /// `d_{qq'}` as a label map, or `None` unless `q <= q'`.
    pub fn map(&self, q: &str, q1: &str) -> Result<Option<BTreeMap<String, String>>> {
        let (a, b) = (self.base.index_of(q)?, self.base.index_of(q1)?);
        Ok(self.table.get(&(a, b)).map(|m| {
            m.iter()
                .enumerate()
                .map(|(x, &y)| (self.fibers[b].label(x).to_string(), self.fibers[a].label(y).to_string()))
                .collect()
        }))
    }

    /// Checks `d_{qq} = id`, `d_{qq'} d_{q'q''} = d_{qq''}` over all triples
    /// and monotonicity of every map.
    pub fn validate(&self) -> ValidationReport {
        let n = self.base.len();
        let label = |q: usize| self.base.label(q).to_string();
        let mut violations = Vec::new();

        let mut identity = true;
        for q in 0..n {
            let m = &self.table[&(q, q)];
            if let Some(x) = (0..m.len()).find(|&x| m[x] != x) {
                identity = false;
                violations.push(Violation::Identity {
                    q: label(q),
                    x: self.fibers[q].label(x).to_string(),
                });
            }
        }

        let mut composition = true;
        for q in 0..n {
            for q1 in (0..n).filter(|&q1| self.base.leq(q, q1)) {
                for q2 in (0..n).filter(|&q2| self.base.leq(q1, q2)) {
                    let (a, b, ab) = (&self.table[&(q, q1)], &self.table[&(q1, q2)], &self.table[&(q, q2)]);
                    if let Some(x) = (0..ab.len()).find(|&x| a[b[x]] != ab[x]) {
                        composition = false;
                        violations.push(Violation::Composition {
                            q: label(q),
                            q1: label(q1),
                            q2: label(q2),
                            x: self.fibers[q2].label(x).to_string(),
                        });
                    }
                }
            }
        }

        let mut monotone = true;
        let mut keys: Vec<_> = self.table.keys().copied().collect();
        keys.sort_unstable();
        for (q, q1) in keys {
            let (m, upper, lower) = (&self.table[&(q, q1)], &self.fibers[q1], &self.fibers[q]);
            'pairs: for x in 0..upper.len() {
                for y in 0..upper.len() {
                    if upper.leq(x, y) && !lower.leq(m[x], m[y]) {
                        monotone = false;
                        violations.push(Violation::Monotonicity {
                            q: label(q),
                            q1: label(q1),
                            x: upper.label(x).to_string(),
                            y: upper.label(y).to_string(),
                        });
                        break 'pairs;
                    }
                }
            }
        }

        ValidationReport {
            identity,
            composition,
            monotone,
            violations,
        }
    }

    fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidDiagram(v.record())),
        }
    }

    fn pairs(&self) -> (Vec<String>, Vec<(usize, usize)>) {
        let mut labels = Vec::new();
        let mut pairs = Vec::new();
        for q in 0..self.base.len() {
            for x in 0..self.fibers[q].len() {
                labels.push(format!("{}@{}", self.fibers[q].label(x), self.base.label(q)));
                pairs.push((x, q));
            }
        }
        (labels, pairs)
    }

    /// Poset on pairs `x@q` with `(x, q) <= (y, q')` iff `q <= q'` and
    /// `x <= d_{qq'}(y)` in `D_q`.
    pub fn grothendieck(&self) -> Result<FinitePoset> {
        self.require_valid()?;
        let (labels, pairs) = self.pairs();
        FinitePoset::from_strict_fn(labels, |i, j| {
            let ((x, q), (y, q1)) = (pairs[i], pairs[j]);
            self.base.leq(q, q1) && self.fibers[q].leq(x, self.table[&(q, q1)][y])
        })
    }

    /// Poset on pairs `x@q` with `(x, p) <= (y, q)` iff `p <= q` and
    /// `d_{pq}(y) = x`. Fiber orders are ignored.
    pub fn flatten(&self) -> Result<FinitePoset> {
        self.require_valid()?;
        let (labels, pairs) = self.pairs();
        FinitePoset::from_strict_fn(labels, |i, j| {
            let ((x, p), (y, q)) = (pairs[i], pairs[j]);
            self.base.leq(p, q) && self.table[&(p, q)][y] == x
        })
    }

    /// Serializes in the `.pdiag` format accepted by [`PosetDiagram::parse`].
    pub fn to_pdiag_text(&self) -> String {
        let indent = |text: String| text.lines().map(|l| format!("  {l}\n")).collect::<String>();
        let mut out = format!("base:\n{}", indent(self.base.to_poset_text()));
        for (q, fiber) in self.base.labels().iter().zip(&self.fibers) {
            out.push_str(&format!("fiber {q}:\n{}", indent(fiber.to_poset_text())));
        }
        for (&(q, q1), image) in &self.given {
            let pairs: Vec<String> = image
                .iter()
                .enumerate()
                .map(|(x, &y)| format!("{}->{}", self.fibers[q1].label(x), self.fibers[q].label(y)))
                .collect();
            out.push_str(&format!(
                "map {} {}: {}\n",
                self.base.label(q),
                self.base.label(q1),
                pairs.join(", ")
            ));
        }
        out
    }

    /// Parses the `.pdiag` format.
    ///
    /// ```text
    /// base:
    ///   elements: 0 1
    ///   0 < 1
    /// fiber 0:
    ///   elements: a b
    /// fiber 1:
    ///   elements: p
    /// map 0 1: p->a
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        enum Target {
            None,
            Base,
            Fiber(String),
        }
        let mut target = Target::None;
        let mut base: Option<(usize, String)> = None;
        let mut fibers: BTreeMap<String, (usize, String)> = BTreeMap::new();
        let mut maps = BTreeMap::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            if let Some(rest) = line.strip_prefix("base:") {
                if base.is_some() {
                    return Err(err("second `base:` block".into()));
                }
                base = Some((lineno + 1, format!("{rest}\n")));
                target = Target::Base;
            } else if let Some(rest) = line.strip_prefix("fiber ") {
                let (q, body) = rest
                    .split_once(':')
                    .ok_or_else(|| err("expected `fiber <node>:`".into()))?;
                let q = q.trim().to_string();
                if fibers.contains_key(&q) {
                    return Err(err(format!("second fiber over `{q}`")));
                }
                fibers.insert(q.clone(), (lineno + 1, format!("{body}\n")));
                target = Target::Fiber(q);
            } else if let Some(rest) = line.strip_prefix("map ") {
                target = Target::None;
                let (head, body) = rest
                    .split_once(':')
                    .ok_or_else(|| err("expected `map <q> <q'>: x->y, ...`".into()))?;
                let nodes: Vec<&str> = head.split_whitespace().collect();
                let [q, q1] = nodes[..] else {
                    return Err(err("map needs exactly two base nodes".into()));
                };
                let mut assignment = BTreeMap::new();
                for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let (x, y) = item
                        .split_once("->")
                        .ok_or_else(|| err(format!("malformed assignment `{item}`")))?;
                    let (x, y) = (x.trim(), y.trim());
                    if x.is_empty() || y.is_empty() {
                        return Err(err(format!("malformed assignment `{item}`")));
                    }
                    if assignment.insert(x.to_string(), y.to_string()).is_some() {
                        return Err(err(format!("`{x}` assigned twice")));
                    }
                }
                if maps.insert((q.to_string(), q1.to_string()), assignment).is_some() {
                    return Err(err(format!("second map {q} {q1}")));
                }
            } else {
                let block = match &mut target {
                    Target::Base => &mut base.as_mut().expect("base block open").1,
                    Target::Fiber(q) => &mut fibers.get_mut(q).expect("fiber block open").1,
                    Target::None if line.is_empty() || line.starts_with('#') => continue,
                    Target::None => return Err(err(format!("unexpected line `{line}`"))),
                };
                block.push_str(line);
                block.push('\n');
            }
        }

        // Shift block-relative line numbers back to file lines.
        let parse_block = |(start, body): &(usize, String)| {
            FinitePoset::parse(body).map_err(|e| match e {
                Error::Parse { line, message } if line > 0 => Error::Parse {
                    line: start + line - 1,
                    message,
                },
                Error::Parse { message, .. } => Error::Parse {
                    line: *start,
                    message,
                },
                other => other,
            })
        };
        let base = base.ok_or(Error::Parse {
            line: 0,
            message: "missing `base:` block".into(),
        })?;
        let base = parse_block(&base)?;
        let fibers = fibers
            .iter()
            .map(|(q, block)| Ok((q.clone(), parse_block(block)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        PosetDiagram::new(base, fibers, maps)
    }
}

/// Homology of the Grothendieck construction against that of the lower fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderReport {
    pub total: HomologyProfile,
    pub lower: HomologyProfile,
    pub pass: bool,
}

impl CylinderReport {
    pub fn records(&self) -> Vec<String> {
        let mut out: Vec<String> = self.total.records().into_iter().skip(1).map(|r| format!("total {r}")).collect();
        out.extend(self.lower.records().into_iter().skip(1).map(|r| format!("lower {r}")));
        out.push(format!("verdict {}", if self.pass { "pass" } else { "fail" }));
        out
    }
}

/// Over the base `0 < 1` the order complex of the Grothendieck construction is
/// a mapping cylinder of `d_{01}` and must have the integral homology of the
/// lower fiber's order complex.
pub fn cylinder_check(d: &PosetDiagram) -> Result<CylinderReport> {
    let base = d.base();
    if base.len() != 2 || base.covers().len() != 1 {
        return Err(Error::InvalidDiagram("cylinder check needs a two-element chain as base".into()));
    }
    let (lo, _) = base.covers()[0];
    let total = reduced_homology(&d.grothendieck()?.order_complex(), Coefficients::Integers);
    let lower = reduced_homology(&d.fibers[lo].order_complex(), Coefficients::Integers);
    Ok(CylinderReport {
        pass: total == lower,
        total,
        lower,
    })
}

/// Random diagram over `0 < 1` with fibers of 1 to `max_fiber` elements.
///
/// The map is drawn uniformly until a monotone one turns up, falling back to
/// a constant map after a few attempts.
pub fn random_chain_diagram(rng: &mut impl Rng, max_fiber: usize) -> PosetDiagram {
    let base = FinitePoset::parse("elements: 0 1\n0 < 1").expect("valid base");
    let (n0, n1) = (rng.random_range(1..=max_fiber), rng.random_range(1..=max_fiber));
    let lower = random_poset(rng, n0, 0.4, "a");
    let upper = random_poset(rng, n1, 0.4, "b");
    let mut image: Vec<usize> = Vec::new();
    for _ in 0..50 {
        let candidate: Vec<usize> = (0..upper.len()).map(|_| rng.random_range(0..lower.len())).collect();
        let monotone = (0..upper.len())
            .all(|x| (0..upper.len()).all(|y| !upper.leq(x, y) || lower.leq(candidate[x], candidate[y])));
        if monotone {
            image = candidate;
            break;
        }
    }
    if image.is_empty() {
        image = vec![rng.random_range(0..lower.len()); upper.len()];
    }
    let assignment = (0..upper.len())
        .map(|x| (upper.label(x).to_string(), lower.label(image[x]).to_string()))
        .collect();
    let fibers = BTreeMap::from([("0".to_string(), lower), ("1".to_string(), upper)]);
    let maps = BTreeMap::from([(("0".to_string(), "1".to_string()), assignment)]);
    PosetDiagram::new(base, fibers, maps).expect("monotone map over a chain")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const TWO_CHAIN: &str = "elements: 0 1\n0 < 1";

    fn diagram(text: &str) -> PosetDiagram {
        PosetDiagram::parse(text).unwrap()
    }

    #[test]
    fn single_cover_chain() {
        let d = diagram("base:\n elements: 0 1\n 0 < 1\nfiber 0:\n elements: a\nfiber 1:\n elements: b\nmap 0 1: b->a\n");
        let g = d.grothendieck().unwrap();
        assert_eq!(g.cover_labels(), vec![("a@0", "b@1")]);
        assert_eq!(d.flatten().unwrap(), g);
    }

    #[test]
    fn antichain_fiber_example() {
        let d = diagram("base:\n elements: 0 1\n 0 < 1\nfiber 0:\n elements: x y\nfiber 1:\n elements: p\nmap 0 1: p->x\n");
        let g = d.grothendieck().unwrap();
        assert_eq!(g.cover_labels(), vec![("x@0", "p@1")]);
        let r = cylinder_check(&d).unwrap();
        assert_eq!(r.total.betti(0), 1);
        assert_eq!(r.lower.betti(0), 1);
        assert!(r.pass);
    }

    #[test]
    fn flatten_ignores_fiber_order() {
        let d = diagram(
            "base: elements: 0 1; 0 < 1\nfiber 0: elements: a a2\nfiber 1: elements: b b2\nmap 0 1: b->a, b2->a\n",
        );
        let f = d.flatten().unwrap();
        assert_eq!(f.cover_labels(), vec![("a@0", "b2@1"), ("a@0", "b@1")]);
        assert_eq!(f.minimal_elements().len(), 4 - 2);
    }

    #[test]
    fn point_base_recovers_fiber() {
        let fiber = FinitePoset::parse("elements: a b c\na < b\na < c").unwrap();
        let d = PosetDiagram::constant(FinitePoset::parse("elements: q").unwrap(), fiber.clone());
        let g = d.grothendieck().unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.cover_labels(), vec![("a@q", "b@q"), ("a@q", "c@q")]);
        let flat = d.flatten().unwrap();
        assert!(flat.covers().is_empty());
    }

    #[test]
    fn constant_diagram_validates() {
        let fiber = FinitePoset::parse("elements: a b\na < b").unwrap();
        let base = FinitePoset::parse("elements: 0 1 2\n0 < 1 < 2").unwrap();
        let d = PosetDiagram::constant(base, fiber);
        assert!(d.validate().passed());
        assert_eq!(d.grothendieck().unwrap().len(), 6);
    }

    #[test]
    fn non_monotone_map_is_reported() {
        let d = diagram("base: elements: 0 1; 0 < 1\nfiber 0: elements: a b; a < b\nfiber 1: elements: c d; c < d\nmap 0 1: c->b, d->a\n");
        let report = d.validate();
        assert!(!report.monotone && report.identity && report.composition);
        assert_eq!(
            report.violations,
            vec![Violation::Monotonicity {
                q: "0".into(),
                q1: "1".into(),
                x: "c".into(),
                y: "d".into()
            }]
        );
        assert!(matches!(d.grothendieck(), Err(Error::InvalidDiagram(_))));
    }

    #[test]
    fn broken_composition_is_reported() {
        let text = "base: elements: 0 1 2; 0 < 1 < 2\n\
                    fiber 0: elements: a b\nfiber 1: elements: c\nfiber 2: elements: e\n\
                    map 0 1: c->a\nmap 1 2: e->c\nmap 0 2: e->b\n";
        let report = diagram(text).validate();
        assert!(!report.composition);
        assert!(report.violations.contains(&Violation::Composition {
            q: "0".into(),
            q1: "1".into(),
            q2: "2".into(),
            x: "e".into()
        }));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            PosetDiagram::parse("fiber 0: elements: a"),
            Err(Error::Parse { .. })
        ));
        let missing = "base: elements: 0 1; 0 < 1\nfiber 0: elements: a\nfiber 1: elements: b\n";
        assert!(matches!(PosetDiagram::parse(missing), Err(Error::InvalidDiagram(_))));
        let bad = "base:\n elements: 0 1\n 0 < 1\nfiber 0:\n elements: a\n a <\n";
        assert_eq!(
            PosetDiagram::parse(bad).unwrap_err(),
            Error::Parse {
                line: 6,
                message: "malformed relation `a <`".into()
            }
        );
    }

    #[test]
    fn text_round_trip() {
        let d = diagram("base: elements: 0 1; 0 < 1\nfiber 0: elements: x y\nfiber 1: elements: p q; p < q\nmap 0 1: p->x, q->x\n");
        assert_eq!(PosetDiagram::parse(&d.to_pdiag_text()).unwrap(), d);
    }

    #[test]
    fn cylinder_examples() {
        let cone = diagram("base: elements: 0 1; 0 < 1\nfiber 0: elements: a\nfiber 1: elements: x y\nmap 0 1: x->a, y->a\n");
        let r = cylinder_check(&cone).unwrap();
        assert!(r.total.is_acyclic() && r.pass);

        let chain = FinitePoset::parse("elements: a b\na < b").unwrap();
        let ident = PosetDiagram::constant(FinitePoset::parse(TWO_CHAIN).unwrap(), chain);
        assert!(cylinder_check(&ident).unwrap().pass);

        let point = PosetDiagram::constant(FinitePoset::parse("elements: q").unwrap(), FinitePoset::parse("elements: a").unwrap());
        assert!(cylinder_check(&point).is_err());
    }

    #[test]
    fn random_diagrams_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let d = random_chain_diagram(&mut rng, 5);
            assert!(d.validate().passed());
            assert!(cylinder_check(&d).unwrap().pass);
        }
    }
}
