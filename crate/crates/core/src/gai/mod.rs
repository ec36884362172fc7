//! Discrete GAI models `U(x) = sum_S u_S(x_S)` over attributes with ordered
//! levels.
//!
//! Attribute indices are 0-based. Utilities given pointwise are
//! [`TabulatedFunction`]s; every operation probes only grid points.

mod canonical;
mod delta;
mod embed;
mod model;

pub use canonical::canonical_decomposition;
pub use delta::{
    delta_decomposition, delta_variation, is_p_additive_function, AdditivityCheck, DeltaWitness,
};
pub use embed::{embed, embed_model, Fill};
pub use model::{Alternative, Attribute, AttributeSpace, GaiModel, GaiTerm, TabulatedFunction};

pub(crate) use delta::subsets_of_size;
