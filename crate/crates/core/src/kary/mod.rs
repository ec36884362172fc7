//! k-ary games and capacities on the grid `{0..k}^n`, with the Möbius/zeta
//! transform pair.
//!
//! Games are dense tables in lexicographic order (first coordinate most
//! significant). Möbius maps are sparse since p-additive games carry only
//! `O(n^p k^p)` atoms.

mod game;
mod grid;
mod mobius;

pub use game::{check_capacity, check_table, CapacityReport, KaryCapacity, KaryGame, Violation};
pub use grid::{GridPoint, GridShape, Points, MAX_GRID_LEN};
pub use mobius::{
    ensure_two_additive, mobius, mobius_bruteforce, p_additivity_degree, support, unanimity,
    zeta, MobiusMap,
};

pub(crate) use grid::{advance, format_coords};
