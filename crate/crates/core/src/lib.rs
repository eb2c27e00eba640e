//! Exact Hochschild homology and cohomology of generalized Weyl algebras
//! `A(k[h], a, sigma)` with `sigma(h) = h - h0`.
//!
//! Dimensions are obtained two ways: from closed-form case tables
//! ([`formulas`]) and from an explicit weight-zero truncation of a free
//! bimodule resolution ([`complex`]), so that each can check the other.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod field;
pub mod formulas;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod selftest;
pub mod text;

pub use error::{Error, Result};
pub use field::{Rational, Scalar};
pub use poly::{Poly, ShiftSigma};
