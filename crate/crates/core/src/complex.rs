//! Abstract simplicial complexes given by their facets, and the constructions
//! used to assemble homotopy models: join, suspension, wedge, quotient by a
//! subcomplex, and boundaries of cyclic polytopes.
//!
//! Conventions for the empty complex: it has no vertices and no facets but
//! still carries the empty face, so it behaves as the sphere of dimension -1.
//! In particular `K * empty = K` and the suspension of the empty complex is
//! two points.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<Vec<&str>> = self
            .facets
            .iter()
            .map(|fc| fc.iter().map(|&v| self.vertices[v].as_str()).collect())
            .collect();
        f.debug_struct("SimplicialComplex")
            .field("facets", &facets)
            .finish()
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            vertices: Vec::new(),
            facets: Vec::new(),
        }
    }

    pub fn point(label: &str) -> Self {
        Self::from_facets([[label]])
    }

    /// The full simplex on the given vertices.
    pub fn simplex<S: AsRef<str>>(labels: &[S]) -> Self {
        Self::from_facets([labels.iter().map(|s| s.as_ref().to_string())])
    }

    /// Boundary of the `(d+1)`-simplex on vertices `0..=d+1`, a `d`-sphere.
    /// `d = -1` gives the empty complex.
    pub fn sphere(d: i64) -> Self {
        if d < 0 {
            return Self::empty();
        }
        let n = d as usize + 2;
        Self::from_facets(
            (0..n).map(|skip| (0..n).filter(move |&v| v != skip).map(|v| v.to_string())),
        )
    }

    /// Builds a complex from arbitrary faces; non-maximal ones are discarded.
    pub fn from_facets<F, S>(faces: impl IntoIterator<Item = F>) -> Self
    where
        F: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let faces: Vec<BTreeSet<String>> = faces
            .into_iter()
            .map(|f| f.into_iter().map(|s| s.as_ref().to_string()).collect())
            .filter(|f: &BTreeSet<String>| !f.is_empty())
            .collect();
        let vertices: Vec<String> = faces
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let facets = faces
            .iter()
            .map(|f| f.iter().map(|v| index[v.as_str()]).collect())
            .collect();
        let facets = maximal_faces(facets);
        SimplicialComplex { vertices, facets }
    }

    /// Builds from index facets that are already pairwise incomparable.
    pub(crate) fn from_maximal_index_facets(vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Self {
        let used: BTreeSet<usize> = facets.iter().flatten().copied().collect();
        let mut order: Vec<usize> = used.into_iter().collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        let mut remap = vec![usize::MAX; vertices.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let mut facets: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|f| {
                let mut f: Vec<usize> = f.into_iter().map(|v| remap[v]).collect();
                f.sort_unstable();
                f
            })
            .collect();
        facets.sort();
        facets.dedup();
        let vertices = order.into_iter().map(|i| vertices[i].clone()).collect();
        SimplicialComplex { vertices, facets }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(label)).ok()
    }

    /// Facets as sorted vertex indices, in lexicographic order.
    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn facet_labels(&self) -> Vec<Vec<&str>> {
        self.facets
            .iter()
            .map(|f| f.iter().map(|&v| self.vertices[v].as_str()).collect())
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension of the largest facet; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    /// All nonempty faces grouped by dimension, each group sorted.
    pub fn faces_by_dimension(&self) -> Vec<Vec<Vec<usize>>> {
        let Some(top) = self.dimension() else {
            return Vec::new();
        };
        let mut sets: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); top + 1];
        for facet in &self.facets {
            for k in 1..=facet.len() {
                for face in facet.iter().copied().combinations(k) {
                    sets[k - 1].insert(face);
                }
            }
        }
        sets.into_iter()
            .map(|s| {
                let mut v: Vec<Vec<usize>> = s.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Face counts `f_0, f_1, ...`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dimension().iter().map(Vec::len).collect()
    }

    /// Reduced Euler characteristic from face counts, counting the empty face.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum::<i64>()
            - 1
    }

    pub fn contains_face<S: AsRef<str>>(&self, face: &[S]) -> bool {
        let Some(mut idx) = face
            .iter()
            .map(|s| self.vertex_index(s.as_ref()))
            .collect::<Option<Vec<usize>>>()
        else {
            return false;
        };
        idx.sort_unstable();
        idx.dedup();
        idx.is_empty() || self.facets.iter().any(|f| is_sorted_subset(&idx, f))
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facet_labels().iter().all(|f| other.contains_face(f))
    }

    /// Applies a label map to every vertex.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> SimplicialComplex {
        Self::from_facets(self.facets.iter().map(|fc| fc.iter().map(|&v| f(&self.vertices[v]))))
    }

    /// Union of two complexes over a common label space.
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self::from_facets(self.facet_labels().into_iter().chain(other.facet_labels()))
    }

    /// A vertex label not used by this complex, derived from `stem`.
    pub fn fresh_label(&self, stem: &str) -> String {
        let mut label = stem.to_string();
        while self.vertex_index(&label).is_some() {
            label.push('\'');
        }
        label
    }

    /// Cone with a fresh apex; the cone on the empty complex is a point.
    pub fn cone(&self, apex_stem: &str) -> SimplicialComplex {
        let apex = self.fresh_label(apex_stem);
        if self.is_empty() {
            return Self::point(&apex);
        }
        Self::from_facets(
            self.facet_labels()
                .into_iter()
                .map(|f| f.into_iter().map(String::from).chain([apex.clone()]).collect::<Vec<_>>()),
        )
    }

    /// Simplicial join. Left vertices are tagged `l.`, right vertices `r.`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let left = self.relabel(|v| format!("l.{v}"));
        let right = other.relabel(|v| format!("r.{v}"));
        if left.is_empty() {
            return right;
        }
        if right.is_empty() {
            return left;
        }
        let facets = left.facet_labels().into_iter().flat_map(|a| {
            right
                .facet_labels()
                .into_iter()
                .map(move |b| a.iter().chain(b.iter()).map(|s| s.to_string()).collect::<Vec<_>>())
        });
        Self::from_facets(facets.collect::<Vec<_>>())
    }

    /// Join with the two-point complex `{n, s}`; apexes become `r.n` and `r.s`.
    pub fn suspension(&self) -> SimplicialComplex {
        self.join(&SimplicialComplex::sphere(0).relabel(|v| {
            if v == "0" { "n" } else { "s" }.to_string()
        }))
    }

    /// Model of `K / A` as `K` with a cone attached along `A`.
    pub fn quotient_model(&self, sub: &SimplicialComplex) -> Result<SimplicialComplex> {
        if let Some(face) = sub.facet_labels().iter().find(|f| !self.contains_face(f)) {
            return Err(Error::NotSubcomplex(face.join(",")));
        }
        let apex = self.fresh_label("^");
        let cone = if sub.is_empty() {
            Self::point(&apex)
        } else {
            Self::from_facets(
                sub.facet_labels()
                    .into_iter()
                    .map(|f| f.into_iter().map(String::from).chain([apex.clone()]).collect::<Vec<_>>()),
            )
        };
        Ok(self.union(&cone))
    }

    /// Pure, and every codimension-one face lies in exactly two facets.
    pub fn is_pseudomanifold(&self) -> bool {
        let Some(top) = self.dimension() else {
            return false;
        };
        if self.facets.iter().any(|f| f.len() != top + 1) {
            return false;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for f in &self.facets {
            for skip in 0..f.len() {
                let ridge: Vec<usize> = f
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *ridges.entry(ridge).or_default() += 1;
            }
        }
        ridges.values().all(|&c| c == 2)
    }

    /// Parses the `.cplx` format: one facet per line, `#` comments.
    pub fn parse(text: &str) -> Result<SimplicialComplex> {
        let mut faces = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let face: Vec<&str> = line.split_whitespace().collect();
            if face.iter().any(|v| v.contains('#')) {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: "vertex labels may not contain `#`".into(),
                });
            }
            faces.push(face);
        }
        Ok(Self::from_facets(faces))
    }

    pub fn to_cplx_text(&self) -> String {
        self.facet_labels()
            .iter()
            .map(|f| format!("{}\n", f.join(" ")))
            .collect()
    }
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

fn maximal_faces(mut faces: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for f in faces.iter_mut() {
        f.sort_unstable();
        f.dedup();
    }
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for f in faces {
        if !kept.iter().any(|k| k.len() > f.len() && is_sorted_subset(&f, k)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

/// A complex with a distinguished vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedComplex {
    complex: SimplicialComplex,
    basepoint: String,
}

impl PointedComplex {
    pub fn new(complex: SimplicialComplex, basepoint: &str) -> Result<Self> {
        if complex.vertex_index(basepoint).is_none() {
            return Err(Error::UnknownLabel(basepoint.to_string()));
        }
        Ok(PointedComplex {
            complex,
            basepoint: basepoint.to_string(),
        })
    }

    pub fn point() -> Self {
        PointedComplex {
            complex: SimplicialComplex::point("*"),
            basepoint: "*".into(),
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn basepoint(&self) -> &str {
        &self.basepoint
    }

    pub fn into_complex(self) -> SimplicialComplex {
        self.complex
    }
}

/// One-point union. Part `i` has its vertices tagged `w{i}.` and every
/// basepoint becomes the shared vertex `*`. The wedge of no parts is a point.
pub fn wedge(parts: &[PointedComplex]) -> Result<PointedComplex> {
    if let [single] = parts {
        return Ok(single.clone());
    }
    let mut facets: Vec<Vec<String>> = vec![vec!["*".to_string()]];
    for (i, part) in parts.iter().enumerate() {
        if part.complex.is_empty() {
            return Err(Error::EmptyWedgeSummand(i));
        }
        let tag = |v: &str| {
            if v == part.basepoint {
                "*".to_string()
            } else {
                format!("w{i}.{v}")
            }
        };
        facets.extend(
            part.complex
                .facet_labels()
                .into_iter()
                .map(|f| f.into_iter().map(tag).collect::<Vec<_>>()),
        );
    }
    Ok(PointedComplex {
        complex: SimplicialComplex::from_facets(facets),
        basepoint: "*".into(),
    })
}

/// Boundary of the cyclic polytope `C(m, d)` for even `d`, with facets
/// selected by Gale's evenness condition on vertices `1..=m`.
pub fn cyclic_polytope_boundary(m: usize, d: usize) -> Result<SimplicialComplex> {
    if d < 2 || !d.is_multiple_of(2) || m < d + 1 {
        return Err(Error::InvalidParameters(format!(
            "cyclic polytope needs even d >= 2 and m >= d + 1, got m = {m}, d = {d}"
        )));
    }
    let facets = (1..=m).combinations(d).filter(|s| gale_evenness(s, m));
    Ok(SimplicialComplex::from_facets(
        facets.map(|s| s.into_iter().map(|v| v.to_string()).collect::<Vec<_>>()),
    ))
}

/// Every pair of non-members `i < j` is separated by an even number of members.
pub(crate) fn gale_evenness(set: &[usize], m: usize) -> bool {
    let member: BTreeSet<usize> = set.iter().copied().collect();
    let outside: Vec<usize> = (1..=m).filter(|v| !member.contains(v)).collect();
    outside.iter().tuple_combinations().all(|(&i, &j)| {
        member.range(i + 1..j).count().is_multiple_of(2)
    })
}

/// Number of facets containing each ridge, keyed by ridge labels.
pub fn ridge_degrees(k: &SimplicialComplex) -> BTreeMap<Vec<String>, usize> {
    let mut out = BTreeMap::new();
    for f in k.facet_labels() {
        for skip in 0..f.len() {
            let ridge: Vec<String> = f
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, v)| v.to_string())
                .collect();
            *out.entry(ridge).or_insert(0) += 1;
        }
    }
    out
}
