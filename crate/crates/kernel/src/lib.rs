//! Exact finite element exterior calculus on a single simplex.
//!
//! Everything is computed over the rationals (or a quadratic extension where
//! a square root is unavoidable), so every identity is checked by equality.

pub mod combinatorics;
pub mod error;
pub mod extension;
pub mod exterior;
pub mod linalg;
pub mod polyform;
pub mod sample;
pub mod scalar;
pub mod simplex;
pub mod star;
pub mod verify;

pub use error::{Error, Result};
