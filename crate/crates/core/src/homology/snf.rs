//! Invariant factors of integer matrices, generic over the integer type.
//!
//! `i64` is fine for small inputs; [`crate::Int`] (arbitrary precision) is what
//! the homology routines use, since entries can grow during elimination.

use std::collections::BTreeSet;
use std::fmt::Debug;

use num_integer::Integer;
use num_traits::Signed;

/// Integer types the Smith normal form routines accept.
pub trait IntegerScalar: Integer + Signed + Clone + Debug {}
impl<T: Integer + Signed + Clone + Debug> IntegerScalar for T {}

/// Invariant factors `d_1 | d_2 | ... | d_r` of a dense matrix (all positive,
/// `r` the rank). Pivots on the entry of least absolute value.
pub fn smith_normal_form<T: IntegerScalar>(matrix: &[Vec<T>]) -> Vec<T> {
    let mut a = matrix.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut factors = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&a, (t..m).flat_map(|i| (t..n).map(move |j| (i, j))))
        else {
            break;
        };
        move_to_pivot(&mut a, t, pi, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..n {
                        let sub = q.clone() * a[t][j].clone();
                        a[i][j] = a[i][j].clone() - sub;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let sub = q.clone() * row[t].clone();
                        row[j] = row[j].clone() - sub;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                let line = (t + 1..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
                if let Some((pi, pj)) = min_abs_entry(&a, line) {
                    move_to_pivot(&mut a, t, pi, pj);
                }
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    for j in t..n {
                        a[t][j] = a[t][j].clone() + a[i][j].clone();
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
    }
    factors
}

fn min_abs_entry<T: IntegerScalar>(
    a: &[Vec<T>],
    positions: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for (i, j) in positions {
        if a[i][j].is_zero() {
            continue;
        }
        let v = a[i][j].abs();
        if best.as_ref().is_none_or(|(_, _, b)| v < *b) {
            let unit = v.is_one();
            best = Some((i, j, v));
            if unit {
                break;
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn move_to_pivot<T>(a: &mut [Vec<T>], t: usize, i: usize, j: usize) {
    a.swap(t, i);
    if j != t {
        for row in a.iter_mut() {
            row.swap(t, j);
        }
    }
}

/// Invariant factors of a sparse matrix given as rows of `(column, value)`.
///
/// Unit entries are eliminated first with sparse row operations; whatever is
/// left goes through the dense algorithm. The result matches
/// [`smith_normal_form`] on the densified matrix.
pub fn sparse_invariant_factors<T: IntegerScalar>(ncols: usize, rows: Vec<Vec<(usize, T)>>) -> Vec<T> {
    let mut rows: Vec<Vec<(usize, T)>> = rows
        .into_iter()
        .map(|mut r| {
            r.retain(|(_, v)| !v.is_zero());
            r.sort_by_key(|(c, _)| *c);
            r
        })
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].insert(r);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut units = 0usize;
    loop {
        let mut progressed = false;
        let mut order: Vec<usize> = (0..rows.len()).filter(|&r| alive[r] && !rows[r].is_empty()).collect();
        order.sort_by_key(|&r| (rows[r].len(), r));
        for r in order {
            if !alive[r] {
                continue;
            }
            let Some((c, p)) = rows[r]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(c, _)| (col_rows[*c].len(), *c))
                .cloned()
            else {
                continue;
            };
            let pivot_row = std::mem::take(&mut rows[r]);
            let others: Vec<usize> = col_rows[c].iter().copied().filter(|&o| o != r).collect();
            for o in others {
                let coeff = rows[o]
                    .iter()
                    .find(|(cc, _)| *cc == c)
                    .map(|(_, v)| v.clone())
                    .expect("column index in sync");
                // p is a unit, so p^{-1} = p.
                let factor = coeff * p.clone();
                let old = std::mem::take(&mut rows[o]);
                let new = axpy(&old, &pivot_row, &factor);
                for (cc, _) in &old {
                    col_rows[*cc].remove(&o);
                }
                for (cc, _) in &new {
                    col_rows[*cc].insert(o);
                }
                rows[o] = new;
            }
            for (cc, _) in &pivot_row {
                col_rows[*cc].remove(&r);
            }
            alive[r] = false;
            units += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }

    let remaining: Vec<usize> = (0..rows.len()).filter(|&r| alive[r] && !rows[r].is_empty()).collect();
    let mut cols: Vec<usize> = remaining.iter().flat_map(|&r| rows[r].iter().map(|(c, _)| *c)).collect();
    cols.sort_unstable();
    cols.dedup();
    let dense: Vec<Vec<T>> = remaining
        .iter()
        .map(|&r| {
            let mut line = vec![T::zero(); cols.len()];
            for (c, v) in &rows[r] {
                line[cols.binary_search(c).unwrap()] = v.clone();
            }
            line
        })
        .collect();
    let mut factors = vec![T::one(); units];
    factors.extend(smith_normal_form(&dense));
    factors
}

/// `target - factor * pivot` on sorted sparse rows.
fn axpy<T: IntegerScalar>(target: &[(usize, T)], pivot: &[(usize, T)], factor: &T) -> Vec<(usize, T)> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let take_target = j >= pivot.len() || (i < target.len() && target[i].0 < pivot[j].0);
        let take_pivot = i >= target.len() || (j < pivot.len() && pivot[j].0 < target[i].0);
        if take_target {
            out.push(target[i].clone());
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, -(factor.clone() * pivot[j].1.clone())));
            j += 1;
        } else {
            let v = target[i].1.clone() - factor.clone() * pivot[j].1.clone();
            if !v.is_zero() {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn to_sparse(m: &[Vec<i64>]) -> (usize, Vec<Vec<(usize, i64)>>) {
        let ncols = m.first().map_or(0, Vec::len);
        let rows = m
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(c, v)| (c, *v)).collect())
            .collect();
        (ncols, rows)
    }

    #[test]
    fn diagonal_two_three() {
        assert_eq!(smith_normal_form(&big(&[&[2, 0], &[0, 3]])), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(smith_normal_form(&[vec![2i64, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn identity() {
        let id = vec![vec![1i64, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(smith_normal_form(&id), vec![1, 1, 1]);
    }

    #[test]
    fn hollow_triangle_boundary() {
        // Edges 01, 02, 12 against vertices 0, 1, 2.
        let d1 = vec![vec![-1i64, 1, 0], vec![-1, 0, 1], vec![0, -1, 1]];
        assert_eq!(smith_normal_form(&d1), vec![1, 1]);
        let (c, rows) = to_sparse(&d1);
        assert_eq!(sparse_invariant_factors(c, rows), vec![1, 1]);
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert!(smith_normal_form::<i64>(&[]).is_empty());
        assert!(smith_normal_form(&[vec![0i64, 0], vec![0, 0]]).is_empty());
        assert!(sparse_invariant_factors::<i64>(3, vec![vec![], vec![]]).is_empty());
    }

    #[test]
    fn nontrivial_torsion() {
        let m = vec![vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(smith_normal_form(&m), vec![2, 6, 12]);
    }

    fn det_gcd_oracle(m: &[Vec<i64>]) -> (usize, i64) {
        // Rank over Q and gcd of all 1x1 minors, the first invariant factor.
        let g = m.iter().flatten().fold(0i64, |g, &x| g.gcd(&x));
        let mut a: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        let mut rank = 0;
        let cols = a.first().map_or(0, Vec::len);
        for c in 0..cols {
            if let Some(p) = (rank..a.len()).find(|&i| a[i][c].abs() > 1e-9) {
                a.swap(rank, p);
                for i in 0..a.len() {
                    if i != rank {
                        let f = a[i][c] / a[rank][c];
                        for j in 0..cols {
                            a[i][j] -= f * a[rank][j];
                        }
                    }
                }
                rank += 1;
            }
        }
        (rank, g)
    }

    proptest! {
        #[test]
        fn factors_divide_and_match_rank(m in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 4), 0..5)) {
            let f = smith_normal_form(&m);
            let (rank, g) = det_gcd_oracle(&m);
            prop_assert_eq!(f.len(), rank);
            if rank > 0 { prop_assert_eq!(f[0], g); }
            for w in f.windows(2) { prop_assert!(w[1] % w[0] == 0); }
            let product: i64 = f.iter().product();
            if rank == 4 && m.len() == 4 {
                // |det| equals the product of the invariant factors.
                let det = {
                    let a: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
                    nalgebra::DMatrix::from_fn(4, 4, |i, j| a[i][j]).determinant()
                };
                prop_assert_eq!(product, det.abs().round() as i64);
            }
            let (c, rows) = to_sparse(&m);
            prop_assert_eq!(sparse_invariant_factors(c, rows), f.clone());
            let b: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            prop_assert_eq!(smith_normal_form(&b), f.into_iter().map(BigInt::from).collect::<Vec<_>>());
        }
    }
}
