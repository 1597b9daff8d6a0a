//! Orientability and order types: chirotopes with CC-system verification,
//! the orientation of triples of curves, point order types, and wiring
//! diagrams (path systems) with the constructions connecting them.

mod chirotope;
mod path;
mod triples;

pub use chirotope::{CcAxiom, CcViolation, Chirotope};
pub(crate) use path::check_firstpath_convention;
pub use path::{
    allowable_sequence, firstpath_representation, swap_pair_from_half, u_block, PathSystem,
};
pub use triples::{chirotope_of, triple_type, TripleType};
