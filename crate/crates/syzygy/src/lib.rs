//! Syzygies of projectivized highest-weight orbits.
//!
//! The crate computes Betti tables of quadratic algebras through the Koszul
//! complex, realizes the Koszul-dual Lie superalgebra and its Chevalley
//! cohomology, and cross-checks both against the combinatorial "hook algebra"
//! description in the Grassmannian case.

pub mod error;
pub mod hookalg;
pub mod homology;
pub mod liecoh;
pub mod linalg;
pub mod partitions;
pub mod quadalg;
pub mod rootsys;
pub mod symfunc;

pub use error::{Error, Result};

pub type Q = num_rational::BigRational;
pub type Z = num_bigint::BigInt;
