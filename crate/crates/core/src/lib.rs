//! Domination polynomials of the co-maximal graph Γ(Z_n).
//!
//! Everything here is pure computation over `alloc`: number-theoretic helpers,
//! exact big-integer polynomials, the ring graph and its divisor-class
//! blow-up, three independent routes to `D(Γ(Z_n), x)` (subset enumeration,
//! the class blow-up sum, and closed forms), and coefficient/root analysis.
//! IO, serialization and the command-line front end live in the `comaxdom`
//! crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod domination;
mod error;
pub mod numtheory;
pub mod polynomial;
pub mod published;
pub mod ringgraph;
pub mod verify;

pub use error::{Error, Result};
pub use numtheory::FactoredInteger;
pub use polynomial::IntPoly;
pub use ringgraph::{BlowupSpec, DivisorGraph, SimpleGraph};
