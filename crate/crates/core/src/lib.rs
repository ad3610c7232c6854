//! Affine Weyl groups of classical type, their Pieri factors, the nilCoxeter and
//! nilHecke algebras, and the affine Stanley symmetric functions built from them.
// Weyl elements cache their reduced word in a `OnceLock`, which ordering and
// hashing never read. Index loops mirror the matrix formulas they implement.
#![allow(clippy::mutable_key_type, clippy::needless_range_loop)]

pub mod assf;
pub mod cartan;
pub mod error;
pub mod linalg;
pub mod nilcox;
pub mod nilhecke;
pub mod partition;
pub mod pieri;
pub mod symfun;
pub mod weyl;

pub use error::{Error, Result};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
