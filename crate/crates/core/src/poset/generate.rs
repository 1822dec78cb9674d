use itertools::Itertools;

use super::FinitePoset;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

const MAX_BOOLEAN: usize = 10;
const MAX_PARTITION: usize = 7;
const MAX_GROUND_SET: usize = 12;

/// Named families of finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// All subsets of `{1..n}` ordered by inclusion, labels `{1,2}`.
    Boolean(usize),
    /// Set partitions of `{1..n}` ordered by refinement, labels `12|3`.
    Partition(usize),
    /// Chain `0 < 1 < ... < k-1`.
    Chain(usize),
    /// Nonempty subsets of `{1..m}` with at most `n` elements.
    ExpDiscrete { m: usize, n: usize },
    /// Nonempty faces of a complex ordered by inclusion.
    FacePoset(SimplicialComplex),
    Product(Box<Generator>, Box<Generator>),
    Dual(Box<Generator>),
}

/// Builds one of the integer-parameterized families by name.
///
/// `product`, `dual` and `face_poset` take structured operands and are only
/// reachable through [`Generator`] or the corresponding methods.
pub fn generate(kind: &str, params: &[usize]) -> Result<FinitePoset> {
    let arity = |k: usize| -> Result<()> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!(
                "{kind} takes {k} parameter(s), got {}",
                params.len()
            )))
        }
    };
    let generator = match kind {
        "boolean" => {
            arity(1)?;
            Generator::Boolean(params[0])
        }
        "partition" => {
            arity(1)?;
            Generator::Partition(params[0])
        }
        "chain" => {
            arity(1)?;
            Generator::Chain(params[0])
        }
        "exp_discrete" | "exp-discrete" => {
            arity(2)?;
            Generator::ExpDiscrete {
                m: params[0],
                n: params[1],
            }
        }
        "product" | "dual" | "face_poset" => {
            return Err(Error::InvalidParameters(format!(
                "{kind} takes poset or complex operands, not integers"
            )))
        }
        other => return Err(Error::UnknownGenerator(other.to_string())),
    };
    generator.build()
}

impl Generator {
    pub fn build(&self) -> Result<FinitePoset> {
        match self {
            Generator::Boolean(n) => {
                if *n > MAX_BOOLEAN {
                    return Err(Error::InvalidParameters(format!(
                        "boolean({n}) exceeds n <= {MAX_BOOLEAN}"
                    )));
                }
                let sets: Vec<u32> = (0..1u32 << n).collect();
                subset_poset(&sets)
            }
            Generator::ExpDiscrete { m, n } => {
                if *n < 1 || n > m || *m > MAX_GROUND_SET {
                    return Err(Error::InvalidParameters(format!(
                        "exp_discrete({m},{n}) needs 1 <= n <= m <= {MAX_GROUND_SET}"
                    )));
                }
                let sets: Vec<u32> = (1..1u32 << m)
                    .filter(|s| s.count_ones() as usize <= *n)
                    .collect();
                subset_poset(&sets)
            }
            Generator::Chain(k) => {
                if *k < 1 {
                    return Err(Error::InvalidParameters("chain needs k >= 1".into()));
                }
                let labels = (0..*k).map(|i| i.to_string()).collect();
                FinitePoset::from_strict_fn(labels, |a, b| a + 1 == b)
            }
            Generator::Partition(n) => {
                if *n < 1 || *n > MAX_PARTITION {
                    return Err(Error::InvalidParameters(format!(
                        "partition needs 1 <= n <= {MAX_PARTITION}"
                    )));
                }
                partition_lattice(*n)
            }
            Generator::FacePoset(k) => Ok(face_poset(k)),
            Generator::Product(a, b) => Ok(a.build()?.product(&b.build()?)),
            Generator::Dual(a) => Ok(a.build()?.dual()),
        }
    }
}

fn subset_label(set: u32) -> String {
    let members = (0..32).filter(|i| set >> i & 1 == 1).map(|i| i + 1).join(",");
    format!("{{{members}}}")
}

fn subset_poset(sets: &[u32]) -> Result<FinitePoset> {
    let labels = sets.iter().map(|&s| subset_label(s)).collect();
    FinitePoset::from_strict_fn(labels, |a, b| {
        let (x, y) = (sets[a], sets[b]);
        x != y && x & y == x && (y & !x).count_ones() == 1
    })
}

/// Restricted growth strings of length `n`: `rgs[i]` is the block of `i`.
pub(crate) fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            extend(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut prefix = vec![0];
    extend(&mut prefix, 0, n, &mut out);
    out
}

fn partition_label(rgs: &[usize]) -> String {
    let blocks = rgs.iter().max().map_or(0, |m| m + 1);
    let sep = if rgs.len() >= 10 { "," } else { "" };
    (0..blocks)
        .map(|b| {
            rgs.iter()
                .enumerate()
                .filter(|&(_, &x)| x == b)
                .map(|(i, _)| (i + 1).to_string())
                .join(sep)
        })
        .join("|")
}

fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    (0..fine.len()).all(|i| (0..i).all(|j| fine[i] != fine[j] || coarse[i] == coarse[j]))
}

fn partition_lattice(n: usize) -> Result<FinitePoset> {
    let parts = set_partitions(n);
    let labels = parts.iter().map(|p| partition_label(p)).collect();
    let blocks: Vec<usize> = parts.iter().map(|p| p.iter().max().unwrap() + 1).collect();
    // Covers merge exactly two blocks.
    FinitePoset::from_strict_fn(labels, |a, b| {
        blocks[a] == blocks[b] + 1 && refines(&parts[a], &parts[b])
    })
}

pub(crate) fn face_poset(k: &SimplicialComplex) -> FinitePoset {
    let faces: Vec<Vec<usize>> = k.faces_by_dimension().into_iter().flatten().collect();
    let labels = faces
        .iter()
        .map(|f| format!("{{{}}}", f.iter().map(|&v| k.vertex(v)).join(",")))
        .collect();
    FinitePoset::from_strict_fn(labels, |a, b| {
        faces[b].len() == faces[a].len() + 1 && faces[a].iter().all(|v| faces[b].contains(v))
    })
    .expect("face poset")
}
