//! Reduced simplicial homology over the integers and over Z/2.
//!
//! The chain complex is augmented: degree -1 has a single generator (the empty
//! face), so the empty complex has reduced homology `Z` in degree -1 and every
//! nonempty complex has it zero there.

pub mod gf2;
pub mod snf;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::poset::BoundedPoset;

pub use snf::{smith_normal_form, sparse_invariant_factors, IntegerScalar};

/// Coefficient ring tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficients {
    Integers,
    Mod2,
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coefficients::Integers => "z",
            Coefficients::Mod2 => "z2",
        })
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z" | "Z" => Ok(Coefficients::Integers),
            "z2" | "Z2" | "z/2" => Ok(Coefficients::Mod2),
            other => Err(Error::InvalidParameters(format!("unknown coefficients `{other}`"))),
        }
    }
}

/// Sparse boundary matrices of the augmented simplicial chain complex.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    /// Number of generators in degrees -1, 0, 1, ...
    sizes: Vec<usize>,
    /// `boundaries[k]` is the boundary from degree `k` to `k-1`, one row per
    /// `k`-face listing `(index of (k-1)-face, sign)`.
    boundaries: Vec<Vec<Vec<(usize, i64)>>>,
}

impl ChainComplexData {
    /// Builds the augmented chain complex of `k` and verifies that every
    /// composite of consecutive boundary maps vanishes.
    pub fn from_complex(k: &SimplicialComplex) -> Result<Self> {
        let faces = k.faces_by_dimension();
        let mut sizes = vec![1];
        sizes.extend(faces.iter().map(Vec::len));
        let mut boundaries = Vec::with_capacity(faces.len());
        // Degree 0 maps every vertex to the empty face.
        if let Some(vertices) = faces.first() {
            boundaries.push(vec![vec![(0, 1)]; vertices.len()]);
        }
        for dim in 1..faces.len() {
            let lower: HashMap<&[usize], usize> = faces[dim - 1]
                .iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i))
                .collect();
            let rows = faces[dim]
                .iter()
                .map(|face| {
                    let mut row: Vec<(usize, i64)> = (0..face.len())
                        .map(|skip| {
                            let sub: Vec<usize> = face
                                .iter()
                                .enumerate()
                                .filter(|&(i, _)| i != skip)
                                .map(|(_, &v)| v)
                                .collect();
                            let sign = if skip % 2 == 0 { 1 } else { -1 };
                            (lower[sub.as_slice()], sign)
                        })
                        .collect();
                    row.sort_unstable();
                    row
                })
                .collect();
            boundaries.push(rows);
        }
        let data = ChainComplexData { sizes, boundaries };
        data.check_boundary_squared()?;
        Ok(data)
    }

    /// Top degree present (-1 for the empty complex).
    pub fn top_degree(&self) -> i64 {
        self.sizes.len() as i64 - 2
    }

    /// Number of generators in `degree`.
    pub fn size(&self, degree: i64) -> usize {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|i| self.sizes.get(i).copied())
            .unwrap_or(0)
    }

    /// Boundary rows out of `degree` (empty for degree -1).
    pub fn boundary(&self, degree: i64) -> &[Vec<(usize, i64)>] {
        usize::try_from(degree)
            .ok()
            .and_then(|k| self.boundaries.get(k))
            .map_or(&[], Vec::as_slice)
    }

    pub fn check_boundary_squared(&self) -> Result<()> {
        for k in 1..self.boundaries.len() {
            let lower = &self.boundaries[k - 1];
            for row in &self.boundaries[k] {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(j, s) in row {
                    for &(i, t) in &lower[j] {
                        *acc.entry(i).or_default() += s * t;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return Err(Error::BoundarySquare(k));
                }
            }
        }
        Ok(())
    }

    /// Alternating count of generators, i.e. the reduced Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.sizes
            .iter()
            .enumerate()
            .map(|(i, &n)| if i % 2 == 1 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Reduced Betti numbers and torsion coefficients, degrees from -1 upward.
///
/// Trailing zero degrees are trimmed, so two profiles compare equal exactly
/// when they agree in every degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyProfile {
    coefficients: Coefficients,
    betti: Vec<usize>,
    torsion: Vec<Vec<BigInt>>,
}

impl HomologyProfile {
    /// Builds a profile from `(degree, rank)` and `(degree, factors)` data.
    pub fn new(
        coefficients: Coefficients,
        betti: impl IntoIterator<Item = (i64, usize)>,
        torsion: impl IntoIterator<Item = (i64, Vec<BigInt>)>,
    ) -> Self {
        let mut profile = HomologyProfile {
            coefficients,
            betti: Vec::new(),
            torsion: Vec::new(),
        };
        for (d, r) in betti {
            let i = (d + 1) as usize;
            if profile.betti.len() <= i {
                profile.betti.resize(i + 1, 0);
            }
            profile.betti[i] += r;
        }
        for (d, mut t) in torsion {
            let i = (d + 1) as usize;
            if profile.torsion.len() <= i {
                profile.torsion.resize(i + 1, Vec::new());
            }
            profile.torsion[i].append(&mut t);
            profile.torsion[i].sort();
        }
        profile.trim();
        profile
    }

    fn trim(&mut self) {
        while self.betti.last() == Some(&0) {
            self.betti.pop();
        }
        while self.torsion.last().is_some_and(Vec::is_empty) {
            self.torsion.pop();
        }
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn betti(&self, degree: i64) -> usize {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|i| self.betti.get(i).copied())
            .unwrap_or(0)
    }

    pub fn torsion(&self, degree: i64) -> &[BigInt] {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|i| self.torsion.get(i))
            .map_or(&[], Vec::as_slice)
    }

    /// Degrees with nonzero rank, ascending.
    pub fn nonzero_degrees(&self) -> Vec<i64> {
        (0..self.betti.len())
            .filter(|&i| self.betti[i] > 0)
            .map(|i| i as i64 - 1)
            .collect()
    }

    pub fn max_degree(&self) -> i64 {
        self.betti.len().max(self.torsion.len()) as i64 - 2
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti.is_empty() && self.torsion.is_empty()
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion.is_empty()
    }

    /// Alternating sum of Betti numbers.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// True if this is the reduced homology of a `d`-sphere (no torsion).
    pub fn is_sphere(&self, d: i64) -> bool {
        self.nonzero_degrees() == [d] && self.betti(d) == 1 && !self.has_torsion()
    }

    /// Machine-readable `betti <degree> <rank>` and `torsion <degree> <f>...` lines.
    pub fn records(&self) -> Vec<String> {
        let mut out = vec![format!("coeff {}", self.coefficients)];
        for d in self.nonzero_degrees() {
            out.push(format!("betti {d} {}", self.betti(d)));
        }
        for i in 0..self.torsion.len() {
            if !self.torsion[i].is_empty() {
                let factors: Vec<String> = self.torsion[i].iter().map(ToString::to_string).collect();
                out.push(format!("torsion {} {}", i as i64 - 1, factors.join(" ")));
            }
        }
        if self.is_acyclic() {
            out.push("acyclic".into());
        }
        out
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_acyclic() {
            return write!(f, "acyclic over {}", self.coefficients);
        }
        let parts: Vec<String> = (-1..=self.max_degree())
            .filter(|&d| self.betti(d) > 0 || !self.torsion(d).is_empty())
            .map(|d| {
                let mut s = format!("H{d}: rank {}", self.betti(d));
                if !self.torsion(d).is_empty() {
                    let t: Vec<String> = self.torsion(d).iter().map(ToString::to_string).collect();
                    s.push_str(&format!(" torsion {}", t.join(",")));
                }
                s
            })
            .collect();
        write!(f, "{} over {}", parts.join("; "), self.coefficients)
    }
}

/// Reduced homology of a simplicial complex.
pub fn reduced_homology(k: &SimplicialComplex, coefficients: Coefficients) -> HomologyProfile {
    let chain = ChainComplexData::from_complex(k).expect("simplicial boundary squares to zero");
    chain_homology(&chain, coefficients)
}

/// Reduced homology of an augmented chain complex.
pub fn chain_homology(chain: &ChainComplexData, coefficients: Coefficients) -> HomologyProfile {
    let top = chain.top_degree();
    // ranks[k + 1] and factors[k + 1] belong to the boundary out of degree k.
    let reductions: Vec<(usize, Vec<BigInt>)> = (-1..=top)
        .into_par_iter()
        .map(|k| {
            let rows = chain.boundary(k);
            let ncols = chain.size(k - 1);
            match coefficients {
                Coefficients::Integers => {
                    let rows = rows
                        .iter()
                        .map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect())
                        .collect();
                    let f = sparse_invariant_factors(ncols, rows);
                    (f.len(), f)
                }
                Coefficients::Mod2 => {
                    let rows: Vec<Vec<usize>> = rows
                        .iter()
                        .map(|r| r.iter().filter(|(_, v)| v % 2 != 0).map(|&(c, _)| c).collect())
                        .collect();
                    (gf2::rank(ncols, &rows), Vec::new())
                }
            }
        })
        .collect();
    let rank = |k: i64| -> usize {
        usize::try_from(k + 1)
            .ok()
            .and_then(|i| reductions.get(i))
            .map_or(0, |r| r.0)
    };
    let betti = (-1..=top).map(|d| (d, chain.size(d) - rank(d) - rank(d + 1)));
    let torsion = (-1..top).map(|d| {
        let factors = &reductions[(d + 2) as usize].1;
        (
            d,
            factors.iter().filter(|f| !f.is_one()).cloned().collect::<Vec<_>>(),
        )
    });
    let profile = HomologyProfile::new(coefficients, betti, torsion);
    assert_eq!(
        profile.reduced_euler_characteristic(),
        chain.euler_characteristic(),
        "Betti numbers disagree with face counts"
    );
    profile
}

/// Result of comparing the Möbius number with the reduced Euler
/// characteristic of the proper part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhilipHallReport {
    pub mobius: BigInt,
    pub euler_characteristic: BigInt,
    pub pass: bool,
}

impl PhilipHallReport {
    pub fn records(&self) -> Vec<String> {
        vec![
            format!("mobius {}", self.mobius),
            format!("euler {}", self.euler_characteristic),
            format!("verdict {}", if self.pass { "pass" } else { "fail" }),
        ]
    }
}

/// Checks `mu(bottom, top) = reduced Euler characteristic of the order
/// complex of the proper part`, the latter taken from integral homology.
pub fn philip_hall_check(p: &BoundedPoset) -> Result<PhilipHallReport> {
    if p.poset().len() < 3 {
        return Err(Error::InvalidParameters(
            "Philip Hall check needs at least three elements".into(),
        ));
    }
    let mobius = p.mobius();
    let profile = reduced_homology(&p.truncate().order_complex(), Coefficients::Integers);
    let euler = BigInt::from(profile.reduced_euler_characteristic());
    let pass = mobius == euler;
    Ok(PhilipHallReport {
        mobius,
        euler_characteristic: euler,
        pass,
    })
}

/// Number of even invariant factors, used by the universal coefficient check.
pub fn even_factor_count(factors: &[BigInt]) -> usize {
    factors.iter().filter(|f| (*f % 2u32).is_zero() && f.is_positive()).count()
}
