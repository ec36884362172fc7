use thiserror::Error;

use crate::gai::DeltaWitness;
use crate::kary::CapacityReport;
use crate::lp::LpError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid shape: {0}")]
    InvalidShape(String),

    #[error("point {point} lies outside the grid with bounds {bounds}")]
    OutOfRange { point: String, bounds: String },

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("a game must vanish at the origin, found {0}")]
    NonzeroOrigin(String),

    #[error("not a k-ary capacity: {}", .0.summary())]
    NotACapacity(Box<CapacityReport>),

    #[error("not 2-additive: Möbius coefficient {coefficient} at {point} has support of size {support_size}")]
    NotTwoAdditive {
        point: String,
        coefficient: String,
        support_size: usize,
    },

    #[error("the unanimity game centered on the origin is not normalizable")]
    OriginUnanimity,

    #[error("invalid antichain: {0}")]
    InvalidAntichain(String),

    #[error("capacity is not 0-1-valued: value {value} at {point}")]
    NotZeroOne { point: String, value: String },

    #[error("{what} needs a budget of {required}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        required: String,
        limit: String,
    },

    #[error("assumption violated: {0}")]
    AssumptionViolated(String),

    #[error("function is not {p}-additive: {witness}")]
    NotPAdditive { p: usize, witness: Box<DeltaWitness> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Lp(#[from] LpError),

    #[error("decomposition LP infeasible on validated input (defect): {0}")]
    DecompositionInfeasible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable snake-case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidShape(_) => "invalid_shape",
            Error::OutOfRange { .. } => "out_of_range",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::NonzeroOrigin(_) => "nonzero_origin",
            Error::NotACapacity(_) => "not_a_capacity",
            Error::NotTwoAdditive { .. } => "not_two_additive",
            Error::OriginUnanimity => "origin_unanimity",
            Error::InvalidAntichain(_) => "invalid_antichain",
            Error::NotZeroOne { .. } => "not_zero_one",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::AssumptionViolated(_) => "assumption_violated",
            Error::NotPAdditive { .. } => "not_p_additive",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Parse(_) => "parse",
            Error::Lp(_) => "lp",
            Error::DecompositionInfeasible(_) => "decomposition_infeasible",
        }
    }
}
