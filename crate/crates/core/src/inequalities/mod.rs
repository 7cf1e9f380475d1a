//! Slack-reporting checks for every inequality the bounds rest on, the seeded
//! random ensembles that feed them, and the suite runner.

mod checks;
mod ensemble;
mod equality;
pub(crate) mod suite;

pub use checks::{
    check_epr_channel_norm, check_holder_sequences, check_hypercontractivity,
    check_partial_trace_norm, check_spectral_power, check_trace_identity, max_admissible_rho,
    trace_norm_contraction, SlackParams, SlackReport,
};
pub use ensemble::{sample, EnsembleKind, MatrixSampler, RandomEnsemble};
pub use equality::{equality_cases, EqualityCase, EQUALITY_TOL};
pub use suite::{grids, run_all, run_suite, trial_seed, SuiteConfig, SuiteName, SuiteReport};
