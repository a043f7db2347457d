use std::fmt;
use std::time::{Duration, Instant};

use gf2_core::BitVector;
use rayon::prelude::*;

/// Knobs shared by all solvers.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Trial budget as a multiple of the predicted trial count.
    pub budget_multiplier: f64,
    /// Refuse to materialize lists beyond this many bytes.
    pub memory_cap_bytes: u64,
    /// MMT/BJMM: iterate every first-merge window target instead of the
    /// single expected-representation target per permutation.
    pub full_target_iteration: bool,
    /// Fan permutation trials out to the rayon pool.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            budget_multiplier: 64.0,
            memory_cap_bytes: 2 << 30,
            full_target_iteration: false,
            parallel: true,
        }
    }
}

/// What a solver run cost.
#[derive(Clone, Debug, Default)]
pub struct SolverStats {
    pub permutation_trials: u64,
    pub list_sizes: Vec<usize>,
    pub matches_examined: u64,
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    /// Trial budget exhausted without a verified solution.
    NotFound { trials: u64 },
    /// A list would exceed the memory cap; the caller can shrink `p`.
    MemoryCap { required_bytes: u128, cap_bytes: u64 },
    InvalidParams(String),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotFound { trials } => write!(f, "no solution within {trials} trials"),
            Self::MemoryCap {
                required_bytes,
                cap_bytes,
            } => write!(
                f,
                "lists would need {required_bytes} bytes (cap {cap_bytes}); reduce p"
            ),
            Self::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
        }
    }
}

impl std::error::Error for SolveError {}

/// Per-trial outcome handed back by the solver closures.
pub struct TrialOutcome {
    pub solution: Option<BitVector>,
    pub matches: u64,
    pub list_sizes: Vec<usize>,
    pub error: Option<SolveError>,
}

/// Runs up to `budget` independent trials, in deterministic batches.
///
/// Trials are indexed; within a batch the lowest successful index wins, so
/// the result does not depend on scheduling. Statistics cover exactly the
/// trials `0..=winning_index` (or all of them on failure), matching what a
/// sequential run would have done.
pub fn run_trials<F>(
    budget: u64,
    config: &SolverConfig,
    trial: F,
) -> Result<(BitVector, SolverStats), SolveError>
where
    F: Fn(u64) -> TrialOutcome + Sync,
{
    let start = Instant::now();
    let batch = if config.parallel {
        (rayon::current_num_threads() as u64 * 8).max(8)
    } else {
        1
    };
    let mut stats = SolverStats::default();
    let mut done = 0u64;
    while done < budget {
        let hi = (done + batch).min(budget);
        let outcomes: Vec<(u64, TrialOutcome)> = if config.parallel {
            (done..hi).into_par_iter().map(|i| (i, trial(i))).collect()
        } else {
            (done..hi).map(|i| (i, trial(i))).collect()
        };
        for (i, out) in outcomes {
            if let Some(err) = out.error {
                return Err(err);
            }
            if stats.list_sizes.is_empty() && !out.list_sizes.is_empty() {
                stats.list_sizes = out.list_sizes;
            }
            stats.matches_examined += out.matches;
            if let Some(sol) = out.solution {
                stats.permutation_trials = i + 1;
                stats.wall_time = start.elapsed();
                return Ok((sol, stats));
            }
        }
        done = hi;
    }
    stats.permutation_trials = budget;
    stats.wall_time = start.elapsed();
    Err(SolveError::NotFound { trials: budget })
}

/// Budget from the predicted trial count; infinite predictions mean the
/// weight split is impossible and get a zero budget.
pub fn trial_budget(predicted: f64, config: &SolverConfig) -> u64 {
    if !predicted.is_finite() {
        return 0;
    }
    let b = (predicted * config.budget_multiplier).ceil();
    if b >= u64::MAX as f64 {
        u64::MAX
    } else {
        (b as u64).max(1)
    }
}

/// Deterministic per-trial seed derived from the run seed (splitmix64).
#[must_use]
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
