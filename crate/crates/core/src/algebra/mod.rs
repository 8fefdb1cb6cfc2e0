//! Exact coefficient fields and bivariate polynomial algebra.

pub mod field;
pub mod poly1;
pub mod poly2;
pub mod roots;

pub use field::{FieldElement, Rat, Tower};
pub use poly1::Poly1;
pub use poly2::{Poly2, Var, Vars};
pub use roots::{split_extension, Root};
