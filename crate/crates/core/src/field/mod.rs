//! Exact scalars: rationals and cyclotomic extensions `Q(zeta_m)`.

pub mod cyclotomic;
pub mod rational;
mod scalar;

pub use cyclotomic::{cyclotomic_coeffs, totient, Cyclotomic, CyclotomicField, DEFAULT_MAX_ORDER};
pub use rational::{format_rational, parse_rational, Rational};
pub use scalar::Scalar;
