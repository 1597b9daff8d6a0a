//! Constructive realizations: the N-gon realization of any swap pair and
//! the universality constructions (dual path-system gluing and primal
//! projective gluing), each verified by sweeping the result back.

mod ngons;
mod universal;

pub use ngons::{
    circle_direction_near, rational_circle_directions, realize_ngons, RealizeOptions, Realization,
};
pub use universal::{universal_dual, universal_primal};
