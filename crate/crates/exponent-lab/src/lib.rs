//! Asymptotic cost models for information-set decoding, classical and
//! quantum, as pure functions of normalized parameters, plus the numerical
//! optimizer that locates each algorithm's exponent at its worst-case rate.
//!
//! All quantities are base-2 exponents per code length `n`; probabilities
//! appear as their (negative) exponents. Max/plus algebra stands in for sums
//! of exponentials throughout.

mod entropy;
mod johnson;
mod lsf;
mod models;
mod optimize;
mod profile;
mod walk;

pub use entropy::{binom_exp, entropy, entropy_inv};
pub use johnson::{johnson_gap, johnson_gap_spectral};
pub use lsf::{config_vector, lsf_cost_exponents, lsf_filter_exponent, may_ozerov_filter_exponent, ConfigVector, LsfCosts};
pub use models::{classical_exponent, cost_exponent, nn_geometry, perm_exponent, quantum_exponent};
pub use optimize::{optimize_params, worst_case_rate, OptimizeOutcome};
pub use profile::{AlgorithmModel, CostBreakdown, RateProfile};
pub use walk::{empirical_marked_fraction, marked_fraction, quantum_walk_total};

/// Relative Gilbert-Varshamov weight `ω` with `H(ω) = 1 - rate`.
#[must_use]
pub fn gv_omega(rate: f64) -> f64 {
    assert!(rate > 0.0 && rate < 1.0, "rate must be in (0,1)");
    entropy_inv(1.0 - rate)
}
