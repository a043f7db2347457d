use std::collections::HashMap;

use gf2_core::{to_systematic, BitVector, Permutation};
use instance_lab::{verify_solution, IsdInstance};
use isd_solvers::{
    build_half_lists, predicted_trials, run_trials, trial_budget, trial_seed, DecodingParams,
    SolveError, SolverConfig, SolverStats, TrialOutcome,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::code::build_filter_code;
use crate::structure::{LsfParams, LsfStructure};

/// Near-neighbour engine parameters for the decoder: insertion and query
/// radii over the reduced ambient (the coordinates past the grouped
/// `ℓ'`-window), plus the filter oversampling.
#[derive(Clone, Copy, Debug)]
pub struct NnParams {
    pub alpha: usize,
    pub beta: usize,
    pub oversample: usize,
}

impl NnParams {
    /// Balanced default: `alpha = beta` at the bucket-load-one point for the
    /// expected half-list size, pushed up to keep the `(α, β, γ)` triple
    /// feasible. Oversample defaults to `dim²`.
    #[must_use]
    pub fn suggested(inst: &IsdInstance, params: &DecodingParams) -> Self {
        let dim = inst.n - inst.k - params.ell_prime;
        let gamma = inst.w.saturating_sub(params.p);
        let head = inst.k + params.ell;
        let half = head.div_ceil(2);
        let list = gf2_core::comb::binomial_u128(half as u64, (params.p / 2) as u64).max(1);
        let list_rel = ((list as f64).log2() / dim as f64).min(1.0);
        let balanced = (dim as f64 * exponent_lab::entropy_inv(1.0 - list_rel)).round() as usize;
        let feasible_floor = gamma / 2 + 1;
        let alpha = balanced.max(feasible_floor).min(dim / 2);
        Self {
            alpha,
            beta: alpha,
            oversample: dim * dim,
        }
    }
}

/// Dumer's decoder with the exact `ℓ`-window match replaced by filtered
/// near-neighbour search: `L₁` images are inserted into the structure, `L₂`
/// images are queries, and any returned pair within distance `w - p` on the
/// reduced coordinates is reassembled and verified.
///
/// Entries are pre-grouped on the exact `ℓ'`-window value
/// (`params.ell_prime <= params.ell`), one filter structure per group.
pub fn nn_dumer_solve(
    inst: &IsdInstance,
    params: &DecodingParams,
    nn: &NnParams,
    seed: u64,
    config: &SolverConfig,
) -> Result<(BitVector, SolverStats), SolveError> {
    inst.validate();
    params
        .check_ranges(inst.n, inst.k, inst.w)
        .map_err(SolveError::InvalidParams)?;
    if params.p % 2 != 0 {
        return Err(SolveError::InvalidParams(format!(
            "nn-dumer needs even p, got {}",
            params.p
        )));
    }
    let (p, ell, lp) = (params.p, params.ell, params.ell_prime);
    let dim = inst.n - inst.k - lp;
    let gamma = inst.w - p;
    if gamma > dim / 2 {
        return Err(SolveError::InvalidParams(format!(
            "target distance {gamma} exceeds half the reduced ambient {dim}; raise p or ell_prime"
        )));
    }
    let lsf_params = LsfParams {
        dim,
        alpha: nn.alpha,
        beta: nn.beta,
        gamma,
        oversample: nn.oversample,
    };
    lsf_params
        .validate()
        .map_err(|e| SolveError::InvalidParams(e.to_string()))?;
    // One deterministic filter code for the whole run; every window group
    // shares it. Built once here to surface refusals before the trial loop.
    let code_seed = seed ^ 0x5f5_f5f5;
    build_filter_code(dim, nn.alpha, nn.beta, gamma, nn.oversample, code_seed)
        .map_err(|e| SolveError::InvalidParams(e.to_string()))?;

    let budget = trial_budget(predicted_trials(inst.n, inst.k, inst.w, params), config);
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
        let (l1, l2) = match build_half_lists(&sf, p, config.memory_cap_bytes) {
            Ok(x) => x,
            Err(e) => {
                out.error = Some(e);
                return out;
            }
        };
        out.list_sizes = vec![l1.len(), l2.len()];

        // Group the stored side by the exact l'-window value; projections
        // past the window feed the filter structures.
        let mut groups: HashMap<u64, (LsfStructure, HashMap<BitVector, Vec<usize>>)> =
            HashMap::new();
        for (i, e) in l1.iter().enumerate() {
            let key = e.image.window_u64(0, lp);
            let proj = e.image.slice(lp, dim);
            let (structure, members) = groups.entry(key).or_insert_with(|| {
                let code =
                    build_filter_code(dim, nn.alpha, nn.beta, gamma, nn.oversample, code_seed)
                        .expect("validated above");
                (LsfStructure::with_code(lsf_params, code), HashMap::new())
            });
            if !members.contains_key(&proj) {
                structure.insert(&proj);
            }
            members.entry(proj).or_default().push(i);
        }

        for e2 in &l2 {
            let key = e2.image.window_u64(0, lp);
            let Some((structure, members)) = groups.get(&key) else {
                continue;
            };
            let q = e2.image.slice(lp, dim);
            for close in structure.query(&q) {
                for &i1 in &members[&close] {
                    out.matches += 1;
                    let e1 = &l1[i1];
                    let diff = e1.image.xor(&e2.image);
                    // A real pair agrees on the whole window, not just the
                    // grouped l' part, and its tail is the outer error.
                    if diff.weight_in_range(0, ell) != 0 {
                        continue;
                    }
                    if diff.weight() > inst.w - p {
                        continue;
                    }
                    let e3 = diff.slice(ell, inst.n - inst.k - ell);
                    let cand = sf.assemble_error(&e1.epart.xor(&e2.epart), &e3);
                    if verify_solution(inst, &cand) {
                        out.solution = Some(cand);
                        return out;
                    }
                }
            }
        }
        out
    })
}
