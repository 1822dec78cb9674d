//! Eigenvalue flags of symmetric matrices.
//!
//! A symmetric matrix that is not a multiple of the identity, with eigenvalues
//! `l_1 <= ... <= l_n`, defines a point of the join of the real Grassmannians:
//! level `i` carries the span of the first `i` eigenvectors with weight
//! `(l_{i+1} - l_i) / (l_n - l_1)`. The map is constant on orbits of
//! `A -> alpha A + beta I` with `alpha > 0`, and the unit sphere of
//! trace-free matrices meets each orbit once.
//!
//! Everything is generic over the real scalar; the tolerances below are
//! tuned for `f64`.

use nalgebra::{DMatrix, RealField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Symmetry tolerance on input entries.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Levels whose weight falls below this are dropped.
pub const WEIGHT_TOL: f64 = 1e-10;
/// Agreement tolerance for weights and principal angles.
pub const COMPARE_TOL: f64 = 1e-8;

fn c<T: RealField + Copy>(x: f64) -> T {
    nalgebra::convert(x)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T: RealField + Copy> {
    data: DMatrix<T>,
}

impl<T: RealField + Copy> SymMatrix<T> {
    pub fn new(data: DMatrix<T>) -> Result<Self> {
        if !data.is_square() {
            return Err(Error::InvalidParameters("matrix is not square".into()));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let n = data.nrows();
        for i in 0..n {
            for j in i + 1..n {
                if (data[(i, j)] - data[(j, i)]).abs() > c(SYMMETRY_TOL) {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        // Symmetrize exactly so the eigensolver sees a symmetric input.
        let data = (&data + data.transpose()) * c::<T>(0.5);
        Ok(SymMatrix { data })
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        SymMatrix {
            data: DMatrix::from_fn(n, n, |i, j| if i == j { diag[i] } else { T::zero() }),
        }
    }

    /// Symmetric matrix with independent standard normal entries on and
    /// above the diagonal.
    pub fn random(n: usize, rng: &mut impl rand::Rng) -> Self {
        let mut data = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let x: f64 = StandardNormal.sample(rng);
                data[(i, j)] = c(x);
                data[(j, i)] = c(x);
            }
        }
        SymMatrix { data }
    }

    pub fn order(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.data
    }

    /// `alpha A + beta I`.
    pub fn affine(&self, alpha: T, beta: T) -> Self {
        let n = self.order();
        SymMatrix {
            data: &self.data * alpha + DMatrix::identity(n, n) * beta,
        }
    }

    pub fn trace(&self) -> T {
        self.data.trace()
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.norm()
    }
}

/// One level of a flag: a weight and an orthonormal basis (as columns) of a
/// subspace of dimension `level`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlagComponent<T: RealField + Copy> {
    pub level: usize,
    pub weight: T,
    pub basis: DMatrix<T>,
}

/// A point of the join of Grassmannians: strictly nested subspaces with
/// positive weights summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct FlagPoint<T: RealField + Copy> {
    pub components: Vec<FlagComponent<T>>,
}

impl<T: RealField + Copy> FlagPoint<T> {
    pub fn levels(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.level).collect()
    }

    pub fn weight_sum(&self) -> T {
        self.components.iter().fold(T::zero(), |acc, c| acc + c.weight)
    }

    /// Each subspace lies inside the next one (checked by rank of the union).
    pub fn is_nested(&self, tol: T) -> bool {
        self.components.windows(2).all(|w| {
            w[0].level < w[1].level && max_principal_angle(&w[0].basis, &w[1].basis) <= tol
        })
    }
}

/// Largest principal angle between `span(a)` and a subspace of `span(b)`,
/// from the singular values of the part of `a` orthogonal to `span(b)`.
/// Both bases must be orthonormal. Zero iff `span(a)` is inside `span(b)`.
pub fn max_principal_angle<T: RealField + Copy>(a: &DMatrix<T>, b: &DMatrix<T>) -> T {
    let residual = a - b * (b.transpose() * a);
    let sigma = residual
        .singular_values()
        .iter()
        .fold(T::zero(), |m, &s| if s > m { s } else { m });
    sigma.min(T::one()).asin()
}

/// The eigenvalue flag of `a`.
pub fn phi<T: RealField + Copy>(a: &SymMatrix<T>) -> Result<FlagPoint<T>> {
    let n = a.order();
    let eigen = a.data.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eigen.eigenvalues[i]
            .partial_cmp(&eigen.eigenvalues[j])
            .expect("finite eigenvalues")
    });
    let values: Vec<T> = order.iter().map(|&i| eigen.eigenvalues[i]).collect();
    let spread = match (values.first(), values.last()) {
        (Some(&lo), Some(&hi)) => hi - lo,
        _ => T::zero(),
    };
    let scale = values.iter().fold(T::one(), |m, v| m.max(v.abs()));
    if n < 2 || spread <= scale * c(SYMMETRY_TOL) {
        return Err(Error::ScalarMatrix);
    }
    let vectors = DMatrix::from_fn(n, n, |r, col| eigen.eigenvectors[(r, order[col])]);
    let mut components = Vec::new();
    for level in 1..n {
        let weight = (values[level] - values[level - 1]) / spread;
        if weight < c(WEIGHT_TOL) {
            continue;
        }
        components.push(FlagComponent {
            level,
            weight,
            basis: vectors.columns(0, level).into_owned(),
        });
    }
    // Renormalize after dropping negligible levels.
    let total = components.iter().fold(T::zero(), |acc, c| acc + c.weight);
    for comp in &mut components {
        comp.weight /= total;
    }
    Ok(FlagPoint { components })
}

/// Largest differences between two flags, or `None` if their levels differ.
pub fn flag_deviation<T: RealField + Copy>(x: &FlagPoint<T>, y: &FlagPoint<T>) -> Option<(T, T)> {
    if x.levels() != y.levels() {
        return None;
    }
    let mut weight = T::zero();
    let mut angle = T::zero();
    for (a, b) in x.components.iter().zip(&y.components) {
        weight = weight.max((a.weight - b.weight).abs());
        angle = angle.max(max_principal_angle(&a.basis, &b.basis));
    }
    Some((weight, angle))
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitReport<T> {
    pub max_weight_deviation: T,
    pub max_angle_deviation: T,
    pub levels_match: bool,
    pub pass: bool,
}

/// Compares the flags of `a` and `alpha a + beta I`.
pub fn orbit_invariance_check<T: RealField + Copy>(
    a: &SymMatrix<T>,
    alpha: T,
    beta: T,
) -> Result<OrbitReport<T>> {
    if alpha <= T::zero() {
        return Err(Error::InvalidParameters("alpha must be positive".into()));
    }
    let x = phi(a)?;
    let y = phi(&a.affine(alpha, beta))?;
    Ok(match flag_deviation(&x, &y) {
        Some((w, ang)) => OrbitReport {
            max_weight_deviation: w,
            max_angle_deviation: ang,
            levels_match: true,
            pass: w < c(COMPARE_TOL) && ang < c(COMPARE_TOL),
        },
        None => OrbitReport {
            max_weight_deviation: T::one(),
            max_angle_deviation: T::one(),
            levels_match: false,
            pass: false,
        },
    })
}

/// The unique trace-free, unit Frobenius norm matrix on the orbit of `a`.
pub fn slice_representative<T: RealField + Copy>(a: &SymMatrix<T>) -> Result<SymMatrix<T>> {
    let n = a.order();
    let shift = a.trace() / nalgebra::convert::<f64, T>(n as f64);
    let centered = a.affine(T::one(), -shift);
    let norm = centered.frobenius_norm();
    if norm <= a.frobenius_norm().max(T::one()) * c(SYMMETRY_TOL) {
        return Err(Error::ScalarMatrix);
    }
    Ok(centered.affine(T::one() / norm, T::zero()))
}

/// Dimension of the unit sphere of trace-free symmetric `n x n` matrices.
pub fn slice_sphere_dimension(n: usize) -> usize {
    n * (n - 1) / 2 + n - 2
}

/// Aggregate of the seeded property battery.
#[derive(Clone, Debug, PartialEq)]
pub struct BatteryReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub orbit_passes: usize,
    pub slice_passes: usize,
    pub flag_passes: usize,
    pub max_orbit_deviation: f64,
    pub max_slice_deviation: f64,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.orbit_passes == self.samples
            && self.slice_passes == self.samples
            && self.flag_passes == self.samples
    }

    pub fn records(&self) -> Vec<String> {
        vec![
            format!("samples {}", self.samples),
            format!("flag pass {} fail {}", self.flag_passes, self.samples - self.flag_passes),
            format!("orbit pass {} fail {}", self.orbit_passes, self.samples - self.orbit_passes),
            format!("slice pass {} fail {}", self.slice_passes, self.samples - self.slice_passes),
            format!("max-orbit-deviation {:e}", self.max_orbit_deviation),
            format!("max-slice-deviation {:e}", self.max_slice_deviation),
            format!("verdict {}", if self.passed() { "pass" } else { "fail" }),
        ]
    }
}

/// For each sample: a random symmetric `A` and a random orbit element
/// `B = alpha A + beta I`. Checks that the flag of `A` is well formed, that
/// `phi(A) = phi(B)`, and that `A`, `B` share a slice representative whose
/// flag is again `phi(A)`.
pub fn property_battery(n: usize, samples: usize, seed: u64) -> Result<BatteryReport> {
    if n < 2 {
        return Err(Error::InvalidParameters("matrix order must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = BatteryReport {
        n,
        samples,
        seed,
        orbit_passes: 0,
        slice_passes: 0,
        flag_passes: 0,
        max_orbit_deviation: 0.0,
        max_slice_deviation: 0.0,
    };
    for _ in 0..samples {
        let a = SymMatrix::<f64>::random(n, &mut rng);
        let alpha = rand::Rng::random_range(&mut rng, 0.1..10.0);
        let beta = rand::Rng::random_range(&mut rng, -10.0..10.0);
        let flag = phi(&a)?;
        if (flag.weight_sum() - 1.0).abs() < WEIGHT_TOL
            && flag.components.iter().all(|c| c.weight > 0.0)
            && flag.is_nested(COMPARE_TOL)
        {
            report.flag_passes += 1;
        }

        let orbit = orbit_invariance_check(&a, alpha, beta)?;
        let dev = orbit.max_weight_deviation.max(orbit.max_angle_deviation);
        report.max_orbit_deviation = report.max_orbit_deviation.max(dev);
        if orbit.pass {
            report.orbit_passes += 1;
        }

        let sa = slice_representative(&a)?;
        let sb = slice_representative(&a.affine(alpha, beta))?;
        let entry_dev = (sa.matrix() - sb.matrix()).abs().max();
        let flag_dev = flag_deviation(&phi(&sa)?, &flag).map_or(1.0, |(w, g)| w.max(g));
        let dev = entry_dev.max(flag_dev);
        report.max_slice_deviation = report.max_slice_deviation.max(dev);
        if dev < COMPARE_TOL {
            report.slice_passes += 1;
        }
    }
    Ok(report)
}
