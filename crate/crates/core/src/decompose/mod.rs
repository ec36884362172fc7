//! Monotone decomposition of 2-additive k-ary capacities.
//!
//! A 2-additive capacity is a sum of nonnegative nondecreasing singleton and
//! pair terms. The terms are found by a feasibility program whose size is
//! quadratic in the number of attributes.

mod census;
mod combination;
mod monotone;
mod terms;

pub use census::{constraint_census, constraint_census_uniform, ConstraintCensus};
pub use combination::{vertex_decompose, ConvexCombination, VERTEX_BUDGET};
pub use monotone::{
    build_monotone_lp, monotone_decompose, monotone_decompose_with, recompose,
    DecomposeObjective, DecomposeOptions, MonotoneGaiDecomposition, MonotoneLp, PairTerm,
};

pub(crate) use terms::{add_monotone_terms, TermLayout};
