//! Combinatorial types of arrangements of convex bodies in the plane.
//!
//! An arrangement of convex bodies induces a system of support curves on the
//! cylinder; the order of the curves and the sequence of their crossings is
//! the arrangement's combinatorial type, a generalization of the order type
//! of a point set. This crate computes these types with exact rational
//! arithmetic, canonicalizes and compares them, extracts chirotopes from
//! orientable arrangements, and realizes abstract types back as arrangements
//! of polygons, including the universality constructions that encode point
//! order types into arrangements of k-gons.

pub mod comb;
mod error;
pub mod exact;
pub mod geometry;
mod label;
pub mod ordertype;
pub mod realize;

pub use error::{Error, Result};
pub use label::Label;
