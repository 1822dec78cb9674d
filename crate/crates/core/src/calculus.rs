//! Homotopy types of finite wedges of spheres and the recurrences that stay
//! inside that class.
//!
//! Every value here is a homotopy type: the empty space (the sphere of
//! dimension -1), a point, or a wedge of spheres of nonnegative dimension.
//! Join, smash, suspension and wedge are closed on this class, which is all
//! the recurrences below need. Nothing here is meant to describe arbitrary
//! complexes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, ToPrimitive, Zero};

use crate::complex::{wedge, PointedComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{Coefficients, HomologyProfile};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SphereWedge {
    Empty,
    /// Multiset of sphere dimensions as `dimension -> multiplicity`. The
    /// empty multiset is the point.
    Wedge(BTreeMap<u32, BigUint>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    Join,
    Smash,
    Suspend,
    Wedge,
}

impl SphereWedge {
    pub fn point() -> Self {
        SphereWedge::Wedge(BTreeMap::new())
    }

    /// `S^d`; `d = -1` gives [`SphereWedge::Empty`].
    pub fn sphere(d: i64) -> Self {
        match d {
            -1 => SphereWedge::Empty,
            d if d >= 0 => Self::spheres(1u32, d as u32),
            _ => panic!("sphere dimension {d} < -1"),
        }
    }

    /// Wedge of `count` copies of `S^d`.
    pub fn spheres(count: impl Into<BigUint>, d: u32) -> Self {
        let count = count.into();
        let mut dims = BTreeMap::new();
        if !count.is_zero() {
            dims.insert(d, count);
        }
        SphereWedge::Wedge(dims)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SphereWedge::Empty)
    }

    pub fn is_point(&self) -> bool {
        matches!(self, SphereWedge::Wedge(d) if d.is_empty())
    }

    /// Reduced Betti numbers `degree -> rank`.
    pub fn reduced_betti(&self) -> BTreeMap<i64, BigUint> {
        match self {
            SphereWedge::Empty => BTreeMap::from([(-1, BigUint::one())]),
            SphereWedge::Wedge(dims) => dims.iter().map(|(&d, c)| (d as i64, c.clone())).collect(),
        }
    }

    /// The reduced homology this homotopy type forces (free, no torsion).
    pub fn homology_profile(&self, coefficients: Coefficients) -> HomologyProfile {
        HomologyProfile::new(
            coefficients,
            self.reduced_betti()
                .into_iter()
                .map(|(d, c)| (d, c.to_usize().expect("Betti number fits in usize"))),
            std::iter::empty(),
        )
    }

    /// Simplicial model: a wedge of boundaries of simplices.
    pub fn realize(&self) -> SimplicialComplex {
        match self {
            SphereWedge::Empty => SimplicialComplex::empty(),
            SphereWedge::Wedge(dims) => {
                let parts: Vec<PointedComplex> = dims
                    .iter()
                    .flat_map(|(&d, c)| {
                        let c = c.to_usize().expect("wedge small enough to realize");
                        std::iter::repeat_n(d, c)
                    })
                    .map(|d| PointedComplex::new(SimplicialComplex::sphere(d as i64), "0").unwrap())
                    .collect();
                wedge(&parts).expect("spheres are nonempty").into_complex()
            }
        }
    }

    /// Machine-readable `wedge <count> x S^<dim>` lines.
    pub fn records(&self) -> Vec<String> {
        match self {
            SphereWedge::Empty => vec!["empty".into()],
            SphereWedge::Wedge(d) if d.is_empty() => vec!["point".into()],
            SphereWedge::Wedge(dims) => dims
                .iter()
                .rev()
                .map(|(d, c)| format!("wedge {c} x S^{d}"))
                .collect(),
        }
    }
}

impl fmt::Display for SphereWedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SphereWedge::Empty => f.write_str("empty"),
            SphereWedge::Wedge(d) if d.is_empty() => f.write_str("point"),
            SphereWedge::Wedge(dims) => {
                let parts: Vec<String> = dims
                    .iter()
                    .map(|(d, c)| if c.is_one() { format!("S^{d}") } else { format!("{c} x S^{d}") })
                    .collect();
                f.write_str(&parts.join(" v "))
            }
        }
    }
}

impl fmt::Debug for SphereWedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Empty * X = X`; `S^a * S^b = S^{a+b+1}`, distributing over wedges.
pub fn join(a: &SphereWedge, b: &SphereWedge) -> SphereWedge {
    match (a, b) {
        (SphereWedge::Empty, x) | (x, SphereWedge::Empty) => x.clone(),
        (SphereWedge::Wedge(x), SphereWedge::Wedge(y)) => combine_dims(x, y, 1),
    }
}

/// `S^a ^ S^b = S^{a+b}`, distributing over wedges. Rejects the empty space.
pub fn smash(a: &SphereWedge, b: &SphereWedge) -> Result<SphereWedge> {
    match (a, b) {
        (SphereWedge::Wedge(x), SphereWedge::Wedge(y)) => Ok(combine_dims(x, y, 0)),
        _ => Err(Error::SmashWithEmpty),
    }
}

pub fn suspend(a: &SphereWedge) -> SphereWedge {
    join(&SphereWedge::sphere(0), a)
}

/// Multiset union; the point is the unit.
pub fn wedge_sum(a: &SphereWedge, b: &SphereWedge) -> Result<SphereWedge> {
    match (a, b) {
        (SphereWedge::Wedge(x), SphereWedge::Wedge(y)) => {
            let mut out = x.clone();
            for (d, c) in y {
                *out.entry(*d).or_insert_with(BigUint::zero) += c;
            }
            Ok(SphereWedge::Wedge(out))
        }
        _ => Err(Error::EmptyWedgeSummand(usize::from(!a.is_empty()))),
    }
}

/// Homotopy type of a contractible space modulo a subspace of type `a`:
/// the suspension of `a` (with `X / empty = X` plus a disjoint point).
pub fn contractible_quotient(a: &SphereWedge) -> SphereWedge {
    suspend(a)
}

fn combine_dims(x: &BTreeMap<u32, BigUint>, y: &BTreeMap<u32, BigUint>, shift: u32) -> SphereWedge {
    let mut out: BTreeMap<u32, BigUint> = BTreeMap::new();
    for (a, ca) in x {
        for (b, cb) in y {
            *out.entry(a + b + shift).or_insert_with(BigUint::zero) += ca * cb;
        }
    }
    SphereWedge::Wedge(out)
}

/// Folds `operands` with the given operator. Join of nothing is `Empty`,
/// smash of nothing is `S^0`, wedge of nothing is the point; suspend takes
/// exactly one operand.
pub fn sw_combine(op: Operator, operands: &[SphereWedge]) -> Result<SphereWedge> {
    match op {
        Operator::Join => Ok(operands.iter().fold(SphereWedge::Empty, |acc, x| join(&acc, x))),
        Operator::Smash => operands
            .iter()
            .try_fold(SphereWedge::sphere(0), |acc, x| smash(&acc, x)),
        Operator::Wedge => {
            if let Some(i) = operands.iter().position(SphereWedge::is_empty) {
                return Err(Error::EmptyWedgeSummand(i));
            }
            operands
                .iter()
                .try_fold(SphereWedge::point(), |acc, x| wedge_sum(&acc, x))
        }
        Operator::Suspend => match operands {
            [x] => Ok(suspend(x)),
            _ => Err(Error::InvalidParameters("suspend takes one operand".into())),
        },
    }
}

fn check_agreement(recurrence: SphereWedge, closed: SphereWedge) -> Result<SphereWedge> {
    if recurrence == closed {
        Ok(closed)
    } else {
        Err(Error::FormulaMismatch {
            recurrence: recurrence.to_string(),
            closed_form: closed.to_string(),
        })
    }
}

/// Truncated Grassmannian poset of `K^n`, `d = dim_R K`: the sphere of
/// dimension `C(n,2) d + n - 2`, checked against the recurrence
/// `X_n = S^{d(n-1)} ^ Susp(X_{n-1})` from `X_2 = S^d`.
pub fn grassmannian_type(n: u32, d: u32) -> Result<SphereWedge> {
    if n < 2 || ![1, 2, 4].contains(&d) {
        return Err(Error::InvalidParameters(format!(
            "grassmannian needs n >= 2 and d in {{1,2,4}}, got n = {n}, d = {d}"
        )));
    }
    let mut x = SphereWedge::sphere(d as i64);
    for k in 3..=n {
        // Complements of a line form K^{k-1}, compactified to S^{d(k-1)}.
        x = smash(&SphereWedge::sphere((d * (k - 1)) as i64), &suspend(&x))?;
    }
    let closed = SphereWedge::sphere((binomial(n, 2) * d + n - 2) as i64);
    check_agreement(x, closed)
}

/// Oriented Grassmannian poset: `2^{n-2}` spheres of dimension
/// `C(n,2) + n - 2`, checked against
/// `X_n = (S^{n-1} v S^{n-1}) ^ Susp(X_{n-1})` from `X_2 = S^1`.
pub fn oriented_grassmannian_type(n: u32) -> Result<SphereWedge> {
    if n < 2 {
        return Err(Error::InvalidParameters("oriented grassmannian needs n >= 2".into()));
    }
    let mut x = SphereWedge::sphere(1);
    for k in 3..=n {
        let hyperplanes = SphereWedge::spheres(2u32, k - 1);
        x = smash(&hyperplanes, &suspend(&x))?;
    }
    let closed = SphereWedge::spheres(BigUint::one() << (n - 2), binomial(n, 2) + n - 2);
    check_agreement(x, closed)
}

/// Proper part of the partition lattice: unrolls
/// `X_n = v_{i=2..n} Susp(X_{n-1})` from `X_2 = Empty`.
pub fn partition_type(n: u32) -> Result<SphereWedge> {
    if n < 3 {
        return Err(Error::InvalidParameters("partition type needs n >= 3".into()));
    }
    let mut x = SphereWedge::Empty;
    for k in 3..=n {
        let summand = suspend(&x);
        x = sw_combine(Operator::Wedge, &vec![summand; (k - 1) as usize])?;
    }
    Ok(x)
}

/// `S^n ^ (D^{n-1} / S^{n-2})` for the configuration poset of the circle.
pub fn exp_circle_type(n: u32) -> Result<SphereWedge> {
    if n < 1 {
        return Err(Error::InvalidParameters("exp-circle needs n >= 1".into()));
    }
    // The order complex of the face poset of an (n-1)-simplex is a disk
    // whose boundary is S^{n-2}.
    let boundary = SphereWedge::sphere(n as i64 - 2);
    smash(&SphereWedge::sphere(n as i64), &contractible_quotient(&boundary))
}
