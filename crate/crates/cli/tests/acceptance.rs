//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `--nocapture` to see them).
//!
//! Criterion 1 pins the regression targets for every cost model's worst-case
//! exponent, and criterion 3 spot-checks the near-neighbour optimizer
//! parameters, both against published reference values. Two of those
//! reference numbers are not attainable by the cost-model family implemented
//! here (the classical depth-two representation decoder and the walk-register
//! convention behind the mmt-q space figure; the nn parameter references mix
//! two points of a near-degenerate optimum valley). The affected assertions
//! are kept faithful and red rather than loosened; everything else is green.

use exponent_lab::{
    entropy_inv, lsf_filter_exponent, may_ozerov_filter_exponent, nn_geometry, quantum_walk_total,
    worst_case_rate, AlgorithmModel,
};
use gf2_core::BitVector;
use instance_lab::{brute_force_min_weight, generate_instance, verify_solution};
use isd_solvers::{
    bjmm_solve, dumer_solve, merge_on_window, mmt_solve, prange_solve, predicted_trials,
    DecodingParams, ListEntry, SolverConfig,
};
use isdlab::bench::{run_dim, slope_report, run_sweep, BenchConfig};
use isdlab::johnson_report;
use lsf_nn::{nn_dumer_solve, NnParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Target {
    model: AlgorithmModel,
    time: f64,
    space: Option<f64>,
}

const TIME_TOL: f64 = 1e-3;
const SPACE_TOL: f64 = 2e-3;

fn targets() -> Vec<Target> {
    use AlgorithmModel::*;
    let t = |model, time, space| Target { model, time, space };
    vec![
        t(PrangeC, 0.120600, None),
        t(PrangeQ, 0.060350, None),
        t(DumerC, 0.116035, Some(0.03644)),
        t(DumerSsQ, 0.059697, Some(0.00618)),
        t(NnDumerC, 0.113762, Some(0.04248)),
        t(NnDumerQ, 0.059922, Some(0.00897)),
        t(NnSsDumerQ, 0.059450, Some(0.00808)),
        t(MmtC, 0.111468, Some(0.05408)),
        t(MmtQ, 0.059037, Some(0.01502)),
        t(BjmmC, 0.101998, Some(0.07590)),
        t(BjmmQ, 0.058696, Some(0.01877)),
    ]
}

#[test]
fn criterion_01_exponent_table_regression() {
    let started = std::time::Instant::now();
    let mut failures = Vec::new();
    for t in targets() {
        let out = worst_case_rate(t.model);
        let dt = out.cost.total - t.time;
        let time_ok = dt.abs() <= TIME_TOL;
        let (space_ok, ds) = match t.space {
            Some(s) => ((out.cost.space - s).abs() <= SPACE_TOL, out.cost.space - s),
            None => (true, 0.0),
        };
        println!(
            "  {:13} time {:.6} (target {:.6}, d={:+.6}) {} | space {:.6} (d={:+.6}) {}",
            t.model.tag(),
            out.cost.total,
            t.time,
            dt,
            if time_ok { "ok" } else { "FAIL" },
            out.cost.space,
            ds,
            if space_ok { "ok" } else { "FAIL" },
        );
        if !time_ok {
            failures.push(format!("{} time off by {dt:+.6}", t.model.tag()));
        }
        if !space_ok {
            failures.push(format!("{} space off by {ds:+.6}", t.model.tag()));
        }
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion 1 ({}): exponent table regression, {} checks off target ({:.1}s)",
        status,
        failures.len(),
        started.elapsed().as_secs_f64()
    );
    assert!(failures.is_empty(), "off-target rows: {failures:?}");
}

#[test]
fn criterion_02_worst_case_rates() {
    let classical = worst_case_rate(AlgorithmModel::PrangeC).rate;
    let quantum = worst_case_rate(AlgorithmModel::PrangeQ).rate;
    let ok_c = (classical - 0.447).abs() <= 0.01;
    let ok_q = (quantum - 0.45).abs() <= 0.01;
    println!(
        "criterion 2 ({}): worst rates classical {:.4} (ref 0.447), quantum {:.4} (ref 0.45)",
        if ok_c && ok_q { "PASS" } else { "FAIL" },
        classical,
        quantum
    );
    assert!(ok_c, "classical argmax rate {classical}");
    assert!(ok_q, "quantum argmax rate {quantum}");
}

#[test]
fn criterion_03_nn_optimizer_parameters() {
    let mut failures = Vec::new();
    let mut check = |name: &str, got: f64, want: f64, tol: f64| {
        let ok = (got - want).abs() <= tol;
        println!(
            "  {name}: {got:.4} (ref {want:.4} ± {tol}) {}",
            if ok { "ok" } else { "FAIL" }
        );
        if !ok {
            failures.push(format!("{name} = {got:.4} vs {want:.4} ± {tol}"));
        }
    };

    let nn = worst_case_rate(AlgorithmModel::NnDumerQ);
    let (a, b, _) = nn_geometry(AlgorithmModel::NnDumerQ, &nn.profile).unwrap();
    check("nn-dumer-q p", nn.profile.pi_p, 0.0027, 0.005);
    check("nn-dumer-q alpha", a, 0.4169, 0.01);
    check("nn-dumer-q beta", b, 0.4280, 0.01);

    let ss = worst_case_rate(AlgorithmModel::NnSsDumerQ);
    let (a, b, _) = nn_geometry(AlgorithmModel::NnSsDumerQ, &ss.profile).unwrap();
    check("nn-ss-dumer-q p", ss.profile.pi_p, 0.043, 0.01);
    check("nn-ss-dumer-q alpha", a, 0.4330, 0.01);
    check("nn-ss-dumer-q beta", b, 0.4419, 0.01);

    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion 3 ({status}): near-neighbour optimizer parameters");
    assert!(failures.is_empty(), "off-reference parameters: {failures:?}");
}

#[test]
fn criterion_04_solver_soundness_and_oracle_equivalence() {
    let config = SolverConfig {
        parallel: false,
        full_target_iteration: true,
        ..SolverConfig::default()
    };

    // (solver family, code shape, instance count)
    let plans: [(&str, usize, usize, u64); 5] = [
        ("prange", 24, 12, 150),
        ("dumer", 24, 12, 150),
        ("mmt", 28, 10, 75),
        ("bjmm", 28, 10, 75),
        ("nn-dumer", 24, 12, 100),
    ];

    let results: Vec<(u64, u64, u64)> = plans
        .par_iter()
        .map(|&(family, n, k, count)| {
            let mut solved = 0u64;
            let mut missed = 0u64;
            let mut wrong = 0u64;
            for seed in 0..count {
                let mut inst = generate_instance(n, k, 1000 * seed + 17);
                let oracle = brute_force_min_weight(&inst).expect("planted instances solve");
                // Tighten to the true minimum weight: any returned solution
                // must then be optimal, so solver weight == oracle weight.
                inst.w = oracle.weight().max(1);
                inst.planted = None;
                let p_even = if inst.w >= 2 { 2 } else { 0 };
                let p_quad = if inst.w >= 4 { 4 } else { 0 };
                let result = match family {
                    "prange" => prange_solve(&inst, seed, &config),
                    "dumer" => {
                        dumer_solve(&inst, &DecodingParams::new(p_even, 4), seed, &config)
                    }
                    "mmt" => mmt_solve(&inst, &DecodingParams::new(p_quad, 4), seed, &config),
                    "bjmm" => {
                        let params = DecodingParams {
                            p: p_quad,
                            ell: 4,
                            ell_prime: 0,
                            eps: if p_quad == 4 { 2 } else { 0 },
                        };
                        bjmm_solve(&inst, &params, seed, &config)
                    }
                    "nn-dumer" => {
                        let params = DecodingParams::new(p_even, 0);
                        let nn = NnParams::suggested(&inst, &params);
                        nn_dumer_solve(&inst, &params, &nn, seed, &config)
                    }
                    _ => unreachable!(),
                };
                match result {
                    Ok((e, _)) => {
                        if verify_solution(&inst, &e) && e.weight() == oracle.weight() {
                            solved += 1;
                        } else {
                            wrong += 1;
                        }
                    }
                    Err(_) => missed += 1,
                }
            }
            (solved, missed, wrong)
        })
        .collect();

    let total: u64 = plans.iter().map(|p| p.3).sum();
    let solved: u64 = results.iter().map(|r| r.0).sum();
    let missed: u64 = results.iter().map(|r| r.1).sum();
    let wrong: u64 = results.iter().map(|r| r.2).sum();
    let ok = wrong == 0 && total >= 500 && solved * 10 >= total * 9;
    println!(
        "criterion 4 ({}): {solved}/{total} solved at oracle weight, {missed} budget misses, {wrong} false/suboptimal",
        if ok { "PASS" } else { "FAIL" }
    );
    assert_eq!(wrong, 0, "false or non-minimal solutions appeared");
    assert!(total >= 500);
    assert!(solved * 10 >= total * 9, "too many budget misses: {missed}");
}

#[test]
fn criterion_05_trial_count_calibration() {
    let started = std::time::Instant::now();
    let config = SolverConfig {
        parallel: false,
        ..SolverConfig::default()
    };
    let mut lines = Vec::new();
    let mut all_ok = true;

    for (name, params) in [
        ("prange", DecodingParams::new(0, 0)),
        ("dumer", DecodingParams::new(2, 6)),
    ] {
        let seeds: Vec<u64> = (0..100).collect();
        let mut trials: Vec<u64> = seeds
            .par_iter()
            .map(|&seed| {
                let inst = generate_instance(128, 64, 55_000 + seed);
                let (_, stats) = match name {
                    "prange" => prange_solve(&inst, seed, &config).expect("within budget"),
                    _ => dumer_solve(&inst, &params, seed, &config).expect("within budget"),
                };
                stats.permutation_trials
            })
            .collect();
        trials.sort_unstable();
        let median = trials[trials.len() / 2] as f64;
        let inst = generate_instance(128, 64, 55_000);
        let predicted = predicted_trials(inst.n, inst.k, inst.w, &params);
        let ok = median >= predicted / 16.0 && median <= predicted * 16.0;
        all_ok &= ok;
        lines.push(format!(
            "{name}: median {median} vs predicted {predicted:.0} (ratio {:.2}) {}",
            median / predicted,
            if ok { "ok" } else { "FAIL" }
        ));
    }
    println!(
        "criterion 5 ({}): {} ({:.1}s)",
        if all_ok { "PASS" } else { "FAIL" },
        lines.join(" | "),
        started.elapsed().as_secs_f64()
    );
    assert!(all_ok);
}

#[test]
fn criterion_06_merge_equals_quadratic_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    for trial in 0..100u32 {
        let len1 = 1 + rng.gen_range(0..1024);
        let len2 = 1 + rng.gen_range(0..1024);
        let window = rng.gen_range(1..=8);
        let offset = rng.gen_range(0..4);
        let image_bits = 16;
        let mk = |rng: &mut ChaCha8Rng| ListEntry {
            epart: BitVector::random(8, rng),
            image: BitVector::random(image_bits, rng),
        };
        let l1: Vec<ListEntry> = (0..len1).map(|_| mk(&mut rng)).collect();
        let l2: Vec<ListEntry> = (0..len2).map(|_| mk(&mut rng)).collect();
        let mut got: Vec<(BitVector, BitVector)> = merge_on_window(&l1, &l2, window, offset)
            .into_iter()
            .map(|e| (e.epart, e.image))
            .collect();
        let mut want = Vec::new();
        for a in &l1 {
            for b in &l2 {
                if a.image.window_u64(offset, window) == b.image.window_u64(offset, window) {
                    want.push((a.epart.xor(&b.epart), a.image.xor(&b.image)));
                }
            }
        }
        got.sort();
        want.sort();
        assert_eq!(got, want, "merge mismatch in trial {trial}");
    }
    println!("criterion 6 (PASS): merge equals the quadratic oracle on 100 list pairs");
}

#[test]
fn criterion_07_lsf_exactness_and_recall() {
    // Exhaustive filters at a small dimension: exact gamma-ball retrieval.
    let exact = run_dim(
        &BenchConfig {
            dims: vec![14],
            alpha_rel: 0.3,
            beta_rel: 0.3,
            gamma_rel: 0.25,
            oversample: 1 << 14,
            list_size: Some(256),
            queries: 128,
            seed: 900,
        },
        14,
        900,
    );
    assert_eq!(exact.recall, 1.0, "exhaustive filters must be exact");
    assert!(exact.oracle_pairs > 0);

    // Sampled structured filters, oversample dim^2, 102 workloads.
    let per_dim = 34;
    let results: Vec<(usize, usize)> = [32usize, 48, 64]
        .into_par_iter()
        .flat_map(|dim| {
            (0..per_dim)
                .into_par_iter()
                .map(move |i| {
                    let cfg = BenchConfig {
                        dims: vec![dim],
                        alpha_rel: 0.375,
                        beta_rel: 0.375,
                        gamma_rel: 0.25,
                        oversample: 0, // dim^2 per dimension
                        list_size: Some(160),
                        queries: 80,
                        seed: 31_000 + 97 * i as u64 + dim as u64,
                    };
                    let r = run_dim(&cfg, dim, cfg.seed);
                    (r.found_pairs, r.oracle_pairs)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let found: usize = results.iter().map(|r| r.0).sum();
    let oracle: usize = results.iter().map(|r| r.1).sum();
    let recall = found as f64 / oracle as f64;
    let ok = recall >= 0.99;
    println!(
        "criterion 7 ({}): exhaustive recall 1.0; sampled recall {recall:.4} over {} workloads ({found}/{oracle} pairs)",
        if ok { "PASS" } else { "FAIL" },
        results.len()
    );
    assert!(ok, "recall {recall}");
}

#[test]
fn criterion_08_lsf_cost_scaling() {
    let dims = vec![24usize, 32, 40, 48];
    // Insert-heavy configuration: the update slope is the conditioned one.
    let upd_cfg = BenchConfig {
        dims: dims.clone(),
        alpha_rel: 0.375,
        beta_rel: 0.25,
        gamma_rel: 0.375,
        oversample: 1,
        list_size: Some(256),
        queries: 256,
        seed: 2100,
    };
    let upd = slope_report(&upd_cfg, &run_sweep(&upd_cfg));
    // Query-heavy mirror with the bucket-load-one list size.
    let qry_cfg = BenchConfig {
        dims,
        alpha_rel: 0.25,
        beta_rel: 0.375,
        gamma_rel: 0.375,
        oversample: 1,
        list_size: None,
        queries: 256,
        seed: 2200,
    };
    let qry = slope_report(&qry_cfg, &run_sweep(&qry_cfg));

    let upd_rel = (upd.update_fitted - upd.update_theory) / upd.update_theory;
    let qry_rel = (qry.query_fitted - qry.query_theory) / qry.query_theory;
    let ok = upd_rel.abs() <= 0.15 && qry_rel.abs() <= 0.15;
    println!(
        "criterion 8 ({}): update slope {:.4} vs {:.4} ({:+.1}%), query slope {:.4} vs {:.4} ({:+.1}%)",
        if ok { "PASS" } else { "FAIL" },
        upd.update_fitted,
        upd.update_theory,
        100.0 * upd_rel,
        qry.query_fitted,
        qry.query_theory,
        100.0 * qry_rel
    );
    assert!(upd_rel.abs() <= 0.15, "update slope off by {upd_rel:.3}");
    assert!(qry_rel.abs() <= 0.15, "query slope off by {qry_rel:.3}");
}

#[test]
fn criterion_09_johnson_spectral_agreement() {
    let rows = johnson_report::check_all(12);
    let worst = johnson_report::max_diff(&rows);
    let ok = worst < 1e-9;
    println!(
        "criterion 9 ({}): {} Johnson graphs, max |formula - spectral| = {worst:.2e}",
        if ok { "PASS" } else { "FAIL" },
        rows.len()
    );
    assert!(ok);
}

#[test]
fn criterion_10_identity_checks() {
    // Filter exponent against the closed form on 100 random feasible points.
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    while checked < 100 {
        let list_exp = rng.gen_range(0.01..0.6);
        let gamma = rng.gen_range(0.01..0.49);
        let a = entropy_inv(1.0 - list_exp);
        if gamma >= 2.0 * a {
            continue;
        }
        let Some(f) = lsf_filter_exponent(a, a, gamma) else {
            continue;
        };
        worst = worst.max((f - may_ozerov_filter_exponent(list_exp, gamma)).abs());
        checked += 1;
    }
    assert!(worst < 1e-9, "closed-form gap {worst:.2e}");

    // Walk balancing: with the register at (4/5) of the list exponent and
    // polylog updates, the setup and walk terms coincide.
    let mut worst_balance: f64 = 0.0;
    for i in 1..=100 {
        let base = 0.004 * i as f64;
        let r = 0.8 * base;
        let total = quantum_walk_total(r, 0.0, 0.0, -r, 4.0 * (r - base));
        worst_balance = worst_balance.max((total - r).abs());
    }
    assert!(worst_balance < 1e-9);

    // Marked-fraction Monte-Carlo within 10% relative.
    let est = exponent_lab::empirical_marked_fraction(64, 16, 2, 100_000, 10);
    let rel = (est / 0.0625 - 1.0).abs();
    assert!(rel <= 0.10, "marked fraction estimate {est}");

    println!(
        "criterion 10 (PASS): closed-form gap {worst:.2e}, balance gap {worst_balance:.2e}, marked-fraction rel err {rel:.3}"
    );
}
