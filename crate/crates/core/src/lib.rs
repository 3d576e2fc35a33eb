//! Exact persistence diagrams over finite posets.
//!
//! Everything here is exact: integer multiplicities are arbitrary-precision,
//! coordinates and costs are rationals extended with a single `inf`, and
//! linear algebra runs over a prime field. No floating point anywhere.

pub mod diagram;
pub mod error;
pub mod galois;
pub mod gen;
pub mod homology;
pub mod interleave;
pub mod linalg;
pub mod matching;
pub mod mobius;
pub mod pmod;
pub mod poset;
pub mod rat;
pub mod selftest;

pub use error::{Error, Result};
pub use rat::{ExtRat, Rat};
