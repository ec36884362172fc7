//! Discrete 2-additive GAI utility models and k-ary capacities.
//!
//! Everything is computed in exact rational arithmetic: the Möbius/zeta
//! transform pair on `{0..k}^n`, GAI decompositions, vertex enumeration of the
//! 2-additive capacity polytope, monotone decomposition through an exact LP,
//! and LP-based elicitation from preference data.

pub mod cli;
pub mod decompose;
pub mod elicit;
pub mod error;
pub mod gai;
pub mod json;
pub mod kary;
pub mod lp;
pub mod polytope;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
