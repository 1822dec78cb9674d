//! Homotopy complementation checks on finite bounded posets.
//!
//! For `z` in the proper part `L'` of a bounded poset whose meets and joins
//! with `z` exist, the complements `Co(z)` can be removed without changing
//! the homotopy type of `L'` beyond making it contractible; when `Co(z)` is an
//! antichain the order complex of `L'` splits as
//! `v_{y in Co(z)} Susp(D(L'_{<y}) * D(L'_{>y}))`. Contractibility is
//! certified here as acyclicity only.

use crate::complex::{wedge, PointedComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{reduced_homology, Coefficients, HomologyProfile};
use crate::poset::{BoundedPoset, FinitePoset};

/// Result of removing the complements of `z` and testing acyclicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityReport {
    pub z: String,
    pub complements: Vec<String>,
    pub homology: HomologyProfile,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementationReport {
    pub z: String,
    pub complements: Vec<String>,
    pub antichain: bool,
    pub coefficients: Coefficients,
    /// Homology of the proper part with `Co(z)` removed.
    pub remainder: HomologyProfile,
    pub acyclic: bool,
    /// Homology of the whole proper part.
    pub left: HomologyProfile,
    /// Homology of the wedge model; only when `Co(z)` is an antichain.
    pub right: Option<HomologyProfile>,
    pub equal: Option<bool>,
}

impl ComplementationReport {
    pub fn passed(&self) -> bool {
        self.acyclic && self.equal.unwrap_or(true)
    }

    pub fn records(&self) -> Vec<String> {
        let mut out = vec![
            format!("z {}", self.z),
            format!("complements {}", self.complements.join(" ")).trim_end().to_string(),
            format!("antichain {}", self.antichain),
            format!("acyclic {} {}", self.coefficients, self.acyclic),
        ];
        let tagged = |tag: &str, h: &HomologyProfile| {
            h.records()
                .into_iter()
                .skip(1)
                .map(|r| format!("{tag} {r}"))
                .collect::<Vec<_>>()
        };
        out.extend(tagged("remainder", &self.remainder));
        out.extend(tagged("left", &self.left));
        if let Some(right) = &self.right {
            out.extend(tagged("right", right));
        }
        out.push(match self.equal {
            Some(e) => format!("equal {e}"),
            None => "equal n/a".to_string(),
        });
        out.push(format!("verdict {}", if self.passed() { "pass" } else { "fail" }));
        out
    }
}

fn remainder_complex(l: &BoundedPoset, complements: &[usize]) -> SimplicialComplex {
    let (bottom, top) = (l.bottom(), l.top());
    l.poset()
        .restrict(|a| a != bottom && a != top && !complements.contains(&a))
        .order_complex()
}

/// Homology of the proper part minus `Co(z)`; passes iff it vanishes.
pub fn complements_removed_acyclic(l: &BoundedPoset, z: &str) -> Result<AcyclicityReport> {
    let co = l.complement_indices(z)?;
    let homology = reduced_homology(&remainder_complex(l, &co), Coefficients::Integers);
    Ok(AcyclicityReport {
        z: z.to_string(),
        complements: co.iter().map(|&c| l.poset().label(c).to_string()).collect(),
        pass: homology.is_acyclic(),
        homology,
    })
}

/// `v_{c in C} Susp(D(P_{<c}) * D(P_{>c}))`, each summand pointed at its
/// first suspension apex. `C` must be an antichain of `p`.
pub fn antichain_wedge_model(p: &FinitePoset, antichain: &[usize]) -> PointedComplex {
    let parts: Vec<PointedComplex> = antichain
        .iter()
        .map(|&c| {
            let below = p.restrict(|a| p.less(a, c)).order_complex();
            let above = p.restrict(|a| p.less(c, a)).order_complex();
            let summand = below.join(&above).suspension();
            PointedComplex::new(summand, "r.n").expect("suspension apex exists")
        })
        .collect();
    wedge(&parts).expect("suspensions are nonempty")
}

/// Builds the wedge side for `z` and compares its integral homology with the
/// proper part's. Fails if `Co(z)` is not an antichain.
pub fn wedge_decomposition(
    l: &BoundedPoset,
    z: &str,
) -> Result<(SimplicialComplex, ComplementationReport)> {
    let co = l.complement_indices(z)?;
    let proper = l.truncate();
    let co_labels: Vec<&str> = co.iter().map(|&c| l.poset().label(c)).collect();
    if let Some((a, b)) = proper.antichain_witness(&co_labels)? {
        return Err(Error::NotAntichain(a, b));
    }
    let report = verify(l, z, Coefficients::Integers)?;
    let co_in_proper: Vec<usize> = co_labels
        .iter()
        .map(|c| proper.index_of(c))
        .collect::<Result<_>>()?;
    let model = antichain_wedge_model(&proper, &co_in_proper).into_complex();
    Ok((model, report))
}

/// Full complementation report over the given coefficients: acyclicity of the
/// remainder, and when `Co(z)` is an antichain, the comparison of the proper
/// part with its wedge model.
pub fn verify(l: &BoundedPoset, z: &str, coefficients: Coefficients) -> Result<ComplementationReport> {
    let co = l.complement_indices(z)?;
    let proper = l.truncate();
    let complements: Vec<String> = co.iter().map(|&c| l.poset().label(c).to_string()).collect();
    let antichain = proper.is_antichain(&complements)?;
    let remainder = reduced_homology(&remainder_complex(l, &co), coefficients);
    let left = reduced_homology(&proper.order_complex(), coefficients);
    let right = if antichain {
        let idx: Vec<usize> = complements
            .iter()
            .map(|c| proper.index_of(c))
            .collect::<Result<_>>()?;
        Some(reduced_homology(
            antichain_wedge_model(&proper, &idx).complex(),
            coefficients,
        ))
    } else {
        None
    };
    let equal = right.as_ref().map(|r| *r == left);
    Ok(ComplementationReport {
        z: z.to_string(),
        complements,
        antichain,
        coefficients,
        acyclic: remainder.is_acyclic(),
        remainder,
        left,
        right,
        equal,
    })
}

/// Homology of `D(P) / D(P - C)` against the wedge model over `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub antichain: Vec<String>,
    pub quotient: HomologyProfile,
    pub wedge: HomologyProfile,
    pub pass: bool,
}

impl QuotientReport {
    pub fn records(&self) -> Vec<String> {
        let mut out = vec![format!("antichain {}", self.antichain.join(" ")).trim_end().to_string()];
        out.extend(self.quotient.records().into_iter().skip(1).map(|r| format!("quotient {r}")));
        out.extend(self.wedge.records().into_iter().skip(1).map(|r| format!("wedge {r}")));
        out.push(format!("verdict {}", if self.pass { "pass" } else { "fail" }));
        out
    }
}

pub fn quotient_wedge_check<S: AsRef<str>>(p: &FinitePoset, antichain: &[S]) -> Result<QuotientReport> {
    if let Some((a, b)) = p.antichain_witness(antichain)? {
        return Err(Error::NotAntichain(a, b));
    }
    let mut idx: Vec<usize> = antichain
        .iter()
        .map(|c| p.index_of(c.as_ref()))
        .collect::<Result<_>>()?;
    idx.sort_unstable();
    idx.dedup();
    let whole = p.order_complex();
    let rest = p.restrict(|a| !idx.contains(&a)).order_complex();
    let quotient = reduced_homology(&whole.quotient_model(&rest)?, Coefficients::Integers);
    let wedge = reduced_homology(antichain_wedge_model(p, &idx).complex(), Coefficients::Integers);
    Ok(QuotientReport {
        antichain: idx.iter().map(|&i| p.label(i).to_string()).collect(),
        pass: quotient == wedge,
        quotient,
        wedge,
    })
}
