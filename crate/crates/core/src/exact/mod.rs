//! Exact arithmetic substrate: arbitrary-precision rationals, the angular
//! order on integer direction vectors, orientation determinants, and
//! rational projective maps. Everything here is immutable and pure.

mod direction;
mod point;
mod projective;
mod rational;

pub use direction::{cmp_angle, direction_between, sample_in_cyclic_arc, Direction};
pub use point::{orient, Point2, Sign};
pub use projective::ProjectiveMap;
pub use rational::{Rational, Turn};
