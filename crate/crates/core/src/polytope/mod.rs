//! Extreme points of the polytope of 2-additive k-ary capacities.
//!
//! The vertices are exactly the 0-1-valued 2-additive capacities, each
//! supported on one or two attributes. A pair vertex is fixed by the antichain
//! of its minimal winning coalitions in `{0..k}^2`.

mod antichain;
mod oracle;
mod vertex;

pub use antichain::{enumerate_antichains, Antichain};
pub use oracle::{
    enumerate_01_2additive_bruteforce, is_extreme_bruteforce, ENUMERATION_GRID_LIMIT,
    EXTREME_GRID_LIMIT,
};
pub use vertex::{
    count_vertices, enumerate_vertices, minimal_winning_coalitions, singleton_vertex,
    vertex_from_antichain, VertexCapacity, VertexCensus, VertexSupport, Vertices,
};

