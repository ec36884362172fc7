//! Exact rational linear programming.
//!
//! Equality rows are eliminated by substitution, bounded variables are shifted
//! to the nonnegative orthant, and the remaining inequality system goes to a
//! two-phase dictionary simplex. Every returned point is re-checked against
//! the original program, and every certificate is verified before it leaves
//! the solver.

mod certificate;
mod program;
mod simplex;
mod solve;

use thiserror::Error;

pub use certificate::{Certificate, DualCertificate, FarkasCertificate, UnboundedRay};
pub use program::{Constraint, LinearProgram, Objective, Relation, Sense, VarId, Variable, Violated};
pub use solve::{solve, solve_with, LpOptions, LpOutcome, LpStatus};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("row {row:?} references undeclared variable {index}")]
    UnknownVariable { row: Option<usize>, index: usize },

    #[error("variable {variable} (#{index}) has its lower bound above its upper bound")]
    EmptyBounds { variable: String, index: usize },

    #[error("simplex pivot budget of {limit} exhausted")]
    IterationLimit { limit: usize },

    #[error("internal solver defect: {0}")]
    Internal(String),
}
