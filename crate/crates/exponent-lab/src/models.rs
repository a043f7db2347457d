use crate::entropy::{binom_exp, entropy, entropy_inv};
use crate::lsf::lsf_filter_exponent;
use crate::profile::{AlgorithmModel, CostBreakdown, RateProfile};

/// `log2 P(p, ℓ) / n` for the permutation success probability
/// `P = C(k+ℓ, p) · C(n-k-ℓ, w-p) / C(n, w)`; `ℓ = 0` recovers the plain
/// information-set case. Always `<= 0`; `-inf` when the split is impossible.
#[must_use]
pub fn perm_exponent(profile: &RateProfile) -> f64 {
    let RateProfile {
        rho,
        omega,
        lambda,
        pi_p,
        ..
    } = *profile;
    let t1 = binom_exp(rho + lambda, pi_p);
    let t2 = binom_exp(1.0 - rho - lambda, omega - pi_p);
    if t1 == f64::NEG_INFINITY || t2 == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    t1 + t2 - binom_exp(1.0, omega)
}

fn base_checks(profile: &RateProfile) -> Option<f64> {
    let p = profile;
    if p.pi_p < 0.0
        || p.lambda < 0.0
        || p.eps_rel < 0.0
        || p.pi_p > p.omega
        || p.omega - p.pi_p > 1.0 - p.rho - p.lambda
    {
        return None;
    }
    let lp = perm_exponent(p);
    if lp == f64::NEG_INFINITY {
        return None;
    }
    Some(lp)
}

/// Cost model for the classical algorithms. Infeasible profiles come back
/// with `total = +inf`.
#[must_use]
pub fn classical_exponent(model: AlgorithmModel, profile: &RateProfile) -> CostBreakdown {
    match try_classical(model, profile) {
        Some(c) => c,
        None => CostBreakdown::infeasible(),
    }
}

fn try_classical(model: AlgorithmModel, p: &RateProfile) -> Option<CostBreakdown> {
    let lp = base_checks(p)?;
    let trials = -lp;
    match model {
        AlgorithmModel::PrangeC => {
            if p.pi_p != 0.0 || p.lambda != 0.0 {
                // Prange has no free parameters.
                return None;
            }
            Some(CostBreakdown {
                setup: 0.0,
                update: f64::NAN,
                check: 0.0,
                walk_total: f64::NAN,
                grover_total: f64::NAN,
                total: trials,
                space: 0.0,
            })
        }
        AlgorithmModel::DumerC => {
            let ls = binom_exp((p.rho + p.lambda) / 2.0, p.pi_p / 2.0);
            if ls == f64::NEG_INFINITY {
                return None;
            }
            let matches = 2.0 * ls - p.lambda;
            Some(CostBreakdown {
                setup: ls,
                update: f64::NAN,
                check: matches,
                walk_total: f64::NAN,
                grover_total: f64::NAN,
                total: trials + ls.max(matches),
                space: ls,
            })
        }
        AlgorithmModel::MmtC | AlgorithmModel::BjmmC => {
            let bjmm = model == AlgorithmModel::BjmmC;
            let eps = if bjmm { p.eps_rel } else { 0.0 };
            if !bjmm && p.eps_rel != 0.0 {
                return None;
            }
            if p.pi_p / 4.0 + eps / 2.0 > (p.rho + p.lambda) / 2.0 {
                return None;
            }
            let rrep = p.pi_p
                + if bjmm {
                    binom_exp(p.rho + p.lambda - p.pi_p, eps)
                } else {
                    0.0
                };
            if !rrep.is_finite() || rrep > p.lambda {
                return None;
            }
            let base = binom_exp((p.rho + p.lambda) / 2.0, p.pi_p / 4.0 + eps / 2.0);
            if base == f64::NEG_INFINITY {
                return None;
            }
            let middle = 2.0 * base - rrep;
            let out = 4.0 * base - p.lambda - rrep;
            Some(CostBreakdown {
                setup: base,
                update: f64::NAN,
                check: middle.max(out),
                walk_total: f64::NAN,
                grover_total: f64::NAN,
                total: trials + base.max(middle).max(out),
                space: base.max(middle),
            })
        }
        AlgorithmModel::NnDumerC => {
            let ls = binom_exp((p.rho + p.lambda) / 2.0, p.pi_p / 2.0);
            let dim = 1.0 - p.rho - p.lambda;
            if ls == f64::NEG_INFINITY || dim <= 0.0 {
                return None;
            }
            let gamma = (p.omega - p.pi_p) / dim;
            let list_rel = ls / dim;
            if gamma > 0.5 || list_rel > 1.0 {
                return None;
            }
            // Balanced May-Ozerov choice: bucket loads of one.
            let alpha = entropy_inv(1.0 - list_rel);
            let filters = dim * lsf_filter_exponent(alpha, alpha, gamma)?;
            Some(CostBreakdown {
                setup: ls,
                update: dim * (filters / dim + entropy(alpha) - 1.0),
                check: filters,
                walk_total: f64::NAN,
                grover_total: f64::NAN,
                total: trials + ls.max(filters),
                // Filters stream; the stored lists dominate memory.
                space: ls,
            })
        }
        _ => None,
    }
}

/// Cost model for the quantum algorithms (Grover over permutations around a
/// quantum-walk list search). Infeasible profiles give `total = +inf`.
#[must_use]
pub fn quantum_exponent(model: AlgorithmModel, profile: &RateProfile) -> CostBreakdown {
    match try_quantum(model, profile) {
        Some(c) => c,
        None => CostBreakdown::infeasible(),
    }
}

fn try_quantum(model: AlgorithmModel, p: &RateProfile) -> Option<CostBreakdown> {
    let lp = base_checks(p)?;
    let grover_perm = -lp / 2.0;
    match model {
        AlgorithmModel::PrangeQ => {
            if p.pi_p != 0.0 || p.lambda != 0.0 {
                return None;
            }
            Some(CostBreakdown {
                setup: 0.0,
                update: f64::NAN,
                check: 0.0,
                walk_total: f64::NAN,
                grover_total: grover_perm,
                total: grover_perm,
                space: 0.0,
            })
        }
        AlgorithmModel::MmtQ | AlgorithmModel::BjmmQ => {
            let bjmm = model == AlgorithmModel::BjmmQ;
            let eps = if bjmm { p.eps_rel } else { 0.0 };
            if !bjmm && p.eps_rel != 0.0 {
                return None;
            }
            if p.pi_p / 4.0 + eps / 2.0 > (p.rho + p.lambda) / 2.0 {
                return None;
            }
            let rrep = p.pi_p
                + if bjmm {
                    binom_exp(p.rho + p.lambda - p.pi_p, eps)
                } else {
                    0.0
                };
            if !rrep.is_finite() {
                return None;
            }
            let base = binom_exp((p.rho + p.lambda) / 2.0, p.pi_p / 4.0 + eps / 2.0);
            if base == f64::NEG_INFINITY {
                return None;
            }
            let rho_r = 0.8 * base; // r = |L|^{4/5}
            let lambda_prime = rho_r - rrep; // log r = l' + log R
            if lambda_prime < -1e-12 {
                return None;
            }
            // Updates into the final merged list stay polylog only when the
            // remaining window absorbs them.
            if p.lambda < 2.0 * rho_r - 1e-12 {
                return None;
            }
            let total = grover_perm + 1.2 * base - rrep / 2.0;
            Some(CostBreakdown {
                setup: rho_r,
                update: 0.0,
                check: 0.0,
                walk_total: rho_r,
                grover_total: grover_perm + lambda_prime.max(0.0) / 2.0,
                total,
                space: rho_r,
            })
        }
        AlgorithmModel::DumerSsQ => {
            let base = binom_exp((p.rho + p.lambda) / 4.0, p.pi_p / 4.0);
            if base == f64::NEG_INFINITY {
                return None;
            }
            let rho_r = 0.8 * base;
            let lambda_prime = rho_r; // no representations: log r = l'
            if p.lambda < 2.0 * rho_r - 1e-12 {
                return None;
            }
            Some(CostBreakdown {
                setup: rho_r,
                update: 0.0,
                check: 0.0,
                walk_total: rho_r,
                grover_total: grover_perm + lambda_prime / 2.0,
                total: grover_perm + 1.2 * base,
                space: rho_r,
            })
        }
        AlgorithmModel::NnDumerQ => {
            let ls = binom_exp((p.rho + p.lambda) / 2.0, p.pi_p / 2.0);
            let dim = 1.0 - p.rho - p.lambda;
            if ls == f64::NEG_INFINITY || dim <= 0.0 {
                return None;
            }
            let rho_r = 2.0 / 3.0 * ls; // r = |L1 u L2|^{2/3}
            let gamma = (p.omega - p.pi_p) / dim;
            if gamma > 0.5 || rho_r / dim > 1.0 {
                return None;
            }
            let alpha = entropy_inv(1.0 - rho_r / dim);
            let beta = entropy_inv(1.0 - 0.75 * rho_r / dim);
            let filters = dim * lsf_filter_exponent(alpha, beta, gamma)?;
            Some(CostBreakdown {
                setup: filters,
                update: filters - rho_r,
                check: filters - 0.75 * rho_r,
                walk_total: filters,
                grover_total: grover_perm,
                total: grover_perm + filters,
                space: filters,
            })
        }
        AlgorithmModel::NnSsDumerQ => {
            let base = binom_exp((p.rho + p.lambda) / 4.0, p.pi_p / 4.0);
            let dim = 1.0 - p.rho - p.lambda;
            if base == f64::NEG_INFINITY || dim <= 0.0 {
                return None;
            }
            let rho_r = 0.8 * base; // 4-list walk: r = |L_{i,j}|^{4/5}
            let lambda_prime = rho_r; // merged sublists stay r-sized
            if lambda_prime > p.lambda + 1e-12 {
                return None;
            }
            let gamma = (p.omega - p.pi_p) / dim;
            if gamma > 0.5 || rho_r / dim > 1.0 {
                return None;
            }
            let alpha = entropy_inv(1.0 - rho_r / dim);
            let beta = entropy_inv(1.0 - 0.75 * rho_r / dim);
            let filters = dim * lsf_filter_exponent(alpha, beta, gamma)?;
            let walk = filters.max(rho_r);
            Some(CostBreakdown {
                setup: walk,
                update: filters - rho_r,
                check: filters - 0.75 * rho_r,
                walk_total: walk,
                grover_total: grover_perm + lambda_prime / 2.0,
                total: grover_perm + lambda_prime / 2.0 + walk,
                space: filters,
            })
        }
        _ => None,
    }
}

/// Dispatches on the model family.
#[must_use]
pub fn cost_exponent(model: AlgorithmModel, profile: &RateProfile) -> CostBreakdown {
    if model.is_quantum() {
        quantum_exponent(model, profile)
    } else {
        classical_exponent(model, profile)
    }
}

/// The near-neighbour geometry `(α, β, γ)` implied by a profile, relative to
/// the ambient fraction `1 - ρ - λ`, for the models that run one.
#[must_use]
pub fn nn_geometry(model: AlgorithmModel, p: &RateProfile) -> Option<(f64, f64, f64)> {
    let dim = 1.0 - p.rho - p.lambda;
    if dim <= 0.0 {
        return None;
    }
    let gamma = (p.omega - p.pi_p) / dim;
    match model {
        AlgorithmModel::NnDumerC => {
            let ls = binom_exp((p.rho + p.lambda) / 2.0, p.pi_p / 2.0);
            let alpha = entropy_inv(1.0 - ls / dim);
            Some((alpha, alpha, gamma))
        }
        AlgorithmModel::NnDumerQ | AlgorithmModel::NnSsDumerQ => {
            let alpha = entropy_inv(1.0 - p.rho_r / dim);
            let beta = entropy_inv(1.0 - 0.75 * p.rho_r / dim);
            Some((alpha, beta, gamma))
        }
        _ => None,
    }
}

/// Fills the derived register/window fields of a profile for a model, so
/// reports carry the full parameter set.
pub(crate) fn derived_profile(model: AlgorithmModel, p: &mut RateProfile) {
    match model {
        AlgorithmModel::MmtQ | AlgorithmModel::BjmmQ => {
            let eps = if model == AlgorithmModel::BjmmQ {
                p.eps_rel
            } else {
                0.0
            };
            let rrep = p.pi_p
                + if model == AlgorithmModel::BjmmQ {
                    binom_exp(p.rho + p.lambda - p.pi_p, eps).max(0.0)
                } else {
                    0.0
                };
            let base = binom_exp((p.rho + p.lambda) / 2.0, p.pi_p / 4.0 + eps / 2.0);
            p.rho_r = 0.8 * base.max(0.0);
            p.lambda_prime = (p.rho_r - rrep).max(0.0);
        }
        AlgorithmModel::DumerSsQ => {
            let base = binom_exp((p.rho + p.lambda) / 4.0, p.pi_p / 4.0);
            p.rho_r = 0.8 * base.max(0.0);
            p.lambda_prime = p.rho_r;
        }
        AlgorithmModel::NnDumerQ => {
            let ls = binom_exp((p.rho + p.lambda) / 2.0, p.pi_p / 2.0);
            p.rho_r = (2.0 / 3.0) * ls.max(0.0);
        }
        AlgorithmModel::NnSsDumerQ => {
            let base = binom_exp((p.rho + p.lambda) / 4.0, p.pi_p / 4.0);
            p.rho_r = 0.8 * base.max(0.0);
            p.lambda_prime = p.rho_r;
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gv_omega;

    #[test]
    fn perm_exponent_trivial_cases() {
        // Support covering everything: P = 1.
        let mut p = RateProfile::new(0.5, 0.11);
        p.lambda = 0.5;
        p.pi_p = 0.11;
        assert!(perm_exponent(&p).abs() < 1e-12);
        // Prange's case is the lambda = pi = 0 instance of the same formula.
        let p0 = RateProfile::new(0.447, gv_omega(0.447));
        let lp = perm_exponent(&p0);
        assert!(((-lp) - 0.120682312).abs() < 1e-6);
    }

    #[test]
    fn perm_exponent_matches_exact_binomials_asymptotically() {
        // Fixed profile, growing n: |asym - exact/n| <= c log2(n) / n.
        let profile = RateProfile {
            rho: 0.5,
            omega: 0.125,
            lambda: 1.0 / 6.0,
            pi_p: 1.0 / 12.0,
            ..RateProfile::default()
        };
        let asym = perm_exponent(&profile);
        let mut prev_gap = f64::INFINITY;
        for n in [24usize, 48, 96] {
            let (k, w, ell, pp) = (n / 2, n / 8, n / 6, n / 12);
            let c = |a: usize, b: usize| gf2_core::comb::binomial_u128(a as u64, b as u64) as f64;
            let exact =
                (c(k + ell, pp).log2() + c(n - k - ell, w - pp).log2() - c(n, w).log2()) / n as f64;
            let gap = (asym - exact).abs();
            // Three binomials contribute ~log2(n)-order Stirling corrections.
            assert!(
                gap <= 0.35 * (n as f64).log2() / n as f64,
                "n = {n}: gap {gap}"
            );
            assert!(gap < prev_gap, "gap should shrink with n");
            prev_gap = gap;
        }
    }

    #[test]
    fn prange_value_at_fixed_rates() {
        let p = RateProfile::new(0.447, gv_omega(0.447));
        let c = classical_exponent(AlgorithmModel::PrangeC, &p);
        assert!((c.total - 0.120682312).abs() < 1e-6);
        let q = quantum_exponent(AlgorithmModel::PrangeQ, &RateProfile::new(0.45, gv_omega(0.45)));
        assert!((q.total - 0.060347808).abs() < 1e-6);
    }

    #[test]
    fn forcing_pi_zero_collapses_dumer_to_prange() {
        let rate = 0.45;
        let p = RateProfile::new(rate, gv_omega(rate));
        let dumer = classical_exponent(AlgorithmModel::DumerC, &p);
        let prange = classical_exponent(AlgorithmModel::PrangeC, &p);
        assert!((dumer.total - prange.total).abs() < 1e-12);
    }

    #[test]
    fn infeasible_profiles_report_infinity() {
        let mut p = RateProfile::new(0.45, gv_omega(0.45));
        p.pi_p = 0.2; // exceeds omega
        assert!(!classical_exponent(AlgorithmModel::DumerC, &p).is_feasible());
        let mut p = RateProfile::new(0.45, gv_omega(0.45));
        p.pi_p = 0.02;
        p.lambda = 0.01; // rrep = pi > lambda for MMT
        assert!(!classical_exponent(AlgorithmModel::MmtC, &p).is_feasible());
        // Quantum MMT additionally needs lambda >= 2 rho_r.
        let mut p = RateProfile::new(0.45, gv_omega(0.45));
        p.pi_p = 0.008;
        p.lambda = 0.012;
        assert!(!quantum_exponent(AlgorithmModel::MmtQ, &p).is_feasible());
    }
}
