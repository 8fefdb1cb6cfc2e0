//! Exact-arithmetic engine for the local invariants of singular plane
//! foliations and their separatrix divisors.
//!
//! The crate computes, over the rationals and simple algebraic extensions:
//! algebraic multiplicities, Milnor and Tjurina numbers (of curves and of
//! foliations along curves), tangency orders and indices, Seidenberg
//! reduction trees with divisor-component bookkeeping, tangency excess and
//! the chi-number, polar intersection and polar excess numbers, GSV indices,
//! and a verification table for the identities relating them.

pub mod algebra;
pub mod foliation;
pub mod invariants;
pub mod localring;
pub mod resolution;
pub mod divisors;
pub mod error;

pub use algebra::{FieldElement, Poly1, Poly2, Rat, Var, Vars};
pub use error::{Error, Result};
