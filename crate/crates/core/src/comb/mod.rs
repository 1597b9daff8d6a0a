//! Swap pairs, incidence sequences, tableaux of local sequences, bumping,
//! canonical forms, layers, periodicity, and standard configurations: the
//! combinatorial encoding of arrangements and its equivalence machinery.

mod canonical;
mod standard;
mod swap_pair;
mod tableau;

pub use canonical::{
    all_pairs_cross_twice, bump_closure, canonical_form, canonical_form_of, enumerate_canonical,
    equivalent, is_orientable, layers, CombinatorialType,
};
pub use standard::{
    abstract_swap_pair, standard_configuration, AbstractConfiguration, AbstractCrossing,
};
pub use swap_pair::{IncidencePair, SwapPair};
pub use tableau::Tableau;
