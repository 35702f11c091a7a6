//! Exact verification engine for visible point vector partition identities.
//!
//! The crate expands gcd-filtered products over lattice cones as truncated
//! multivariate series, compares them with their exponential-sum and closed
//! forms, evaluates the Hessenberg determinant formulas for the Taylor
//! coefficients, and counts the vector partitions these products enumerate.

pub mod arith;
pub mod determinant;
pub mod error;
pub mod flags;
pub mod gcdzeta;
pub mod identity;
pub mod lattice;
pub mod partitions;
pub mod poly;
pub mod sequences;
pub mod series;
pub mod suite;

pub use arith::Rational;
pub use error::{Result, VpvError};
pub use lattice::{ConeKind, ConeRegion};
pub use series::GradedSeries;
