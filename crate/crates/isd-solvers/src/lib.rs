//! Concrete information-set decoders: Prange, Dumer/Stern, MMT and the
//! simplified (depth-two) BJMM, all structured as permutation loops around
//! list merges.
//!
//! Every solver verifies a candidate against the instance before returning
//! it, and reports how many permutations it burned so the trial counts can
//! be checked against the predicted values.

mod driver;
mod lists;
mod params;
mod rep;
mod simple;

pub use driver::{run_trials, trial_budget, trial_seed, SolveError, SolverConfig, SolverStats, TrialOutcome};
pub use lists::{build_half_lists, merge_on_window, ListEntry};
pub use params::{predicted_trials, DecodingParams};
pub use rep::{bjmm_solve, mmt_solve};
pub use simple::{dumer_solve, prange_solve};
