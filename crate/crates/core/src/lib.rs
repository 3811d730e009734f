//! Exact search, construction and verification of mutually unbiased bases
//! over quadratic extensions F_{q^2}/F_q, plus the characteristic-zero
//! "hyperbolic" configuration in Q(i, √6, √3) and its reductions.

pub mod arith;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod gf;
pub mod hermitian;
pub mod nfield;
pub mod polysys;
pub mod search;
pub mod tables;

pub use error::{Error, Result};
