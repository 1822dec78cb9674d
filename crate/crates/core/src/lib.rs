//! Finite posets, their order complexes and exact simplicial homology, with
//! checks for homotopy complementation, sphere-wedge recurrences,
//! configuration posets, eigenvalue flags and diagrams of posets.
//!
//! Exact integer work is generic over [`homology::IntegerScalar`] and the
//! numeric flag code over [`nalgebra::RealField`]; the aliases below fix the
//! scalars used by the rest of the crate.

pub mod calculus;
pub mod complementation;
pub mod complex;
pub mod configuration;
pub mod diagram;
pub mod error;
pub mod grassmann;
pub mod homology;
pub mod poset;
pub mod random;

pub use calculus::SphereWedge;
pub use complex::{PointedComplex, SimplicialComplex};
pub use diagram::PosetDiagram;
pub use error::{Error, Result};
pub use homology::{reduced_homology, Coefficients, HomologyProfile};
pub use poset::{generate, BoundedPoset, FinitePoset, Generator};

/// Arbitrary-precision integer used for Möbius values and torsion.
pub type Int = num_bigint::BigInt;
pub type SymMatrix64 = grassmann::SymMatrix<f64>;
pub type SymMatrix32 = grassmann::SymMatrix<f32>;
pub type FlagPoint64 = grassmann::FlagPoint<f64>;
