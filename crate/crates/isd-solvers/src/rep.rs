use gf2_core::comb::binomial_u128;
use gf2_core::{to_systematic, BitVector, Permutation};
use instance_lab::{verify_solution, IsdInstance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::driver::{run_trials, trial_budget, trial_seed, SolveError, SolverConfig, SolverStats, TrialOutcome};
use crate::lists::{check_cap, enumerate_fragments, merge_on_window, merge_on_window_target};
use crate::params::{predicted_trials, DecodingParams};

/// MMT: four quarter-weight lists, first merge on `⌊log₂ C(p, p/2)⌋` window
/// bits, second merge on the remaining window, distance test outside.
pub fn mmt_solve(
    inst: &IsdInstance,
    params: &DecodingParams,
    seed: u64,
    config: &SolverConfig,
) -> Result<(BitVector, SolverStats), SolveError> {
    rep_solve(inst, params, seed, config, false)
}

/// Simplified BJMM: like MMT but fragments carry weight `p/4 + ε/2`, the
/// representation count gains the `C(k+ℓ-p, ε)` factor, and merged sums must
/// come back down to total weight exactly `p`.
pub fn bjmm_solve(
    inst: &IsdInstance,
    params: &DecodingParams,
    seed: u64,
    config: &SolverConfig,
) -> Result<(BitVector, SolverStats), SolveError> {
    rep_solve(inst, params, seed, config, true)
}

fn rep_solve(
    inst: &IsdInstance,
    params: &DecodingParams,
    seed: u64,
    config: &SolverConfig,
    bjmm: bool,
) -> Result<(BitVector, SolverStats), SolveError> {
    inst.validate();
    params
        .check_ranges(inst.n, inst.k, inst.w)
        .map_err(SolveError::InvalidParams)?;
    let (p, ell, eps) = (params.p, params.ell, params.eps);
    if p % 4 != 0 {
        return Err(SolveError::InvalidParams(format!(
            "representation solvers need p divisible by 4, got {p}"
        )));
    }
    if bjmm {
        if eps % 2 != 0 {
            return Err(SolveError::InvalidParams(format!(
                "bjmm needs even eps, got {eps}"
            )));
        }
        if p / 2 + eps > inst.k + ell {
            return Err(SolveError::InvalidParams(
                "p/2 + eps exceeds k + ell".into(),
            ));
        }
    } else if eps != 0 {
        return Err(SolveError::InvalidParams("mmt takes eps = 0".into()));
    }

    let head = inst.k + ell;
    let frag_w = p / 4 + eps / 2;
    // First-merge window width: floor(log2) of the representation count.
    let reps = binomial_u128(p as u64, (p / 2) as u64)
        * if bjmm {
            binomial_u128((head - p) as u64, eps as u64)
        } else {
            1
        };
    let r1 = if reps <= 1 { 0 } else { reps.ilog2() as usize };
    let r1 = r1.min(ell);

    let budget = trial_budget(predicted_trials(inst.n, inst.k, inst.w, params), config);
    let targets: u64 = if config.full_target_iteration && r1 < 63 {
        1u64 << r1
    } else {
        1
    };

    run_trials(budget, config, |trial| {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, trial));
        let perm = Permutation::random(inst.n, &mut rng);
        let mut out = TrialOutcome {
            solution: None,
            matches: 0,
            list_sizes: Vec::new(),
            error: None,
        };
        let Ok(sf) = to_systematic(&inst.h, &inst.s, ell, &perm) else {
            return out;
        };

        let left = head.div_ceil(2);
        let right = head - left;
        let expected = 2 * binomial_u128(left as u64, frag_w as u64);
        if let Err(e) = check_cap(expected, head, inst.n - inst.k, config.memory_cap_bytes) {
            out.error = Some(e);
            return out;
        }
        let base_left = enumerate_fragments(&sf, 0, left, frag_w, None);
        let base_right = enumerate_fragments(&sf, left, right, frag_w, None);
        let base_right_s = enumerate_fragments(&sf, left, right, frag_w, Some(&sf.sbar));
        out.list_sizes = vec![base_left.len(), base_right.len()];

        for t in 0..targets {
            // Level-1 merges at window target t; afterwards both middle
            // lists agree with each other on the first r1 window bits.
            let l1 = merge_on_window_target(&base_left, &base_right, r1, 0, t);
            let l2 = merge_on_window_target(&base_left, &base_right_s, r1, 0, t);
            if t == 0 {
                out.list_sizes.push(l1.len());
                out.list_sizes.push(l2.len());
            }
            if let Err(e) = check_cap(
                (l1.len() + l2.len()) as u128,
                head,
                inst.n - inst.k,
                config.memory_cap_bytes,
            ) {
                out.error = Some(e);
                return out;
            }
            for m in merge_on_window(&l1, &l2, ell - r1, r1) {
                out.matches += 1;
                // Representations overlap; only weight-p sums are real
                // candidates, and their image tail must fit the budget.
                if m.epart.weight() == p && m.image.weight() <= inst.w - p {
                    let e3 = m.image.slice(ell, inst.n - inst.k - ell);
                    let e = sf.assemble_error(&m.epart, &e3);
                    if verify_solution(inst, &e) {
                        out.solution = Some(e);
                        return out;
                    }
                }
            }
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use instance_lab::{brute_force_min_weight, generate_instance};

    fn sequential() -> SolverConfig {
        SolverConfig {
            parallel: false,
            ..SolverConfig::default()
        }
    }

    fn full_targets() -> SolverConfig {
        SolverConfig {
            parallel: false,
            full_target_iteration: true,
            ..SolverConfig::default()
        }
    }

    #[test]
    fn mmt_p0_reduces_to_prange_like_check() {
        let inst = generate_instance(24, 12, 31);
        let params = DecodingParams::new(0, 2);
        let (e, _) = mmt_solve(&inst, &params, 1, &sequential()).unwrap();
        assert!(verify_solution(&inst, &e));
    }

    #[test]
    fn mmt_solves_planted_instances() {
        let mut solved = 0;
        for seed in 0..12 {
            // Low-rate code so the GV weight admits p = 4; w tightened to
            // the oracle minimum.
            let mut inst = generate_instance(28, 10, 200 + seed);
            assert!(inst.w >= 4, "test assumes GV weight >= 4, got {}", inst.w);
            let oracle = brute_force_min_weight(&inst).unwrap();
            inst.w = oracle.weight().max(1);
            inst.planted = None;
            let params = DecodingParams::new(if inst.w >= 4 { 4 } else { 0 }, 4);
            let (e, _) = mmt_solve(&inst, &params, seed, &full_targets()).unwrap();
            assert!(verify_solution(&inst, &e));
            assert_eq!(e.weight(), oracle.weight());
            solved += 1;
        }
        assert_eq!(solved, 12);
    }

    #[test]
    fn mmt_rejects_bad_p() {
        let inst = generate_instance(24, 12, 33);
        assert!(matches!(
            mmt_solve(&inst, &DecodingParams::new(2, 4), 0, &sequential()),
            Err(SolveError::InvalidParams(_))
        ));
    }

    #[test]
    fn bjmm_eps0_matches_mmt_on_same_seed() {
        let inst = generate_instance(28, 10, 77);
        let params = DecodingParams::new(4, 4);
        let a = mmt_solve(&inst, &params, 5, &full_targets()).unwrap();
        let b = bjmm_solve(&inst, &params, 5, &full_targets()).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1.permutation_trials, b.1.permutation_trials);
    }

    #[test]
    fn bjmm_with_overlap_solves_planted() {
        for seed in 0..8 {
            let mut inst = generate_instance(28, 10, 300 + seed);
            let oracle = brute_force_min_weight(&inst).unwrap();
            inst.w = oracle.weight().max(1);
            inst.planted = None;
            let params = DecodingParams {
                p: if inst.w >= 4 { 4 } else { 0 },
                ell: 4,
                ell_prime: 0,
                eps: if inst.w >= 4 { 2 } else { 0 },
            };
            let (e, _) = bjmm_solve(&inst, &params, seed, &full_targets()).unwrap();
            assert!(verify_solution(&inst, &e));
            assert_eq!(e.weight(), oracle.weight());
        }
    }

    #[test]
    fn bjmm_rejects_odd_eps() {
        let inst = generate_instance(28, 10, 44);
        let params = DecodingParams {
            p: 4,
            ell: 4,
            ell_prime: 0,
            eps: 1,
        };
        assert!(matches!(
            bjmm_solve(&inst, &params, 0, &sequential()),
            Err(SolveError::InvalidParams(_))
        ));
    }
}
