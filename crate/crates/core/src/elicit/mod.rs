//! Fitting monotone 2-additive models to preference data.
//!
//! Comparisons and category assignments become linear rows on the singleton
//! and pair tables; monotonicity costs only the per-table rows. The default
//! program maximizes a shared strict-preference margin.

mod dataset;
mod fit;
mod generate;

pub use dataset::PreferenceDataset;
pub use fit::{
    build_elicitation_lp, elicit, elicit_soft, elicit_with, ElicitationLp, ElicitationResult,
    ElicitationStatus, InconsistencyCertificate, SoftElicitation,
};
pub use generate::{random_ground_truth, sample_comparisons};
