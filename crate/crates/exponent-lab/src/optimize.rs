use rayon::prelude::*;

use crate::gv_omega;
use crate::models::{cost_exponent, derived_profile};
use crate::profile::{AlgorithmModel, CostBreakdown, RateProfile};

/// A located optimum: the best feasible point the search found, as a
/// certificate rather than a claimed global minimum.
#[derive(Clone, Copy, Debug)]
pub struct OptimizeOutcome {
    pub rate: f64,
    pub profile: RateProfile,
    pub cost: CostBreakdown,
}

fn profile_from(model: AlgorithmModel, rho: f64, omega: f64, x: &[f64]) -> RateProfile {
    let mut p = RateProfile::new(rho, omega);
    if !x.is_empty() {
        p.pi_p = x[0];
        p.lambda = x[1];
    }
    if x.len() > 2 {
        p.eps_rel = x[2];
    }
    derived_profile(model, &mut p);
    p
}

fn objective(model: AlgorithmModel, rho: f64, omega: f64, x: &[f64]) -> f64 {
    if x.iter().any(|v| !v.is_finite()) {
        return f64::INFINITY;
    }
    cost_exponent(model, &profile_from(model, rho, omega, x)).total
}

/// Minimizes the model's total exponent over its free parameters at a fixed
/// rate: coarse grid, then Nelder-Mead refinement from the best grid points.
/// `None` when no feasible point exists.
#[must_use]
pub fn optimize_params(model: AlgorithmModel, rate: f64) -> Option<OptimizeOutcome> {
    optimize_at(model, rate, 1e-3, 10)
}

fn optimize_at(
    model: AlgorithmModel,
    rate: f64,
    grid_step: f64,
    nm_starts: usize,
) -> Option<OptimizeOutcome> {
    assert!(rate > 0.0 && rate <= 0.5, "rate must be in (0, 1/2]");
    let omega = gv_omega(rate);
    let dims = model.free_params();

    if dims == 0 {
        let p = profile_from(model, rate, omega, &[]);
        let c = cost_exponent(model, &p);
        return c.is_feasible().then_some(OptimizeOutcome {
            rate,
            profile: p,
            cost: c,
        });
    }

    // Coarse grid over the feasibility box, feasibility handled by the
    // models themselves (infeasible evaluations cost +inf).
    let lam_hi = (1.0 - rate - 1e-9).min(0.40);
    let pi_steps = (omega / grid_step).ceil() as usize + 1;
    let lam_steps = (lam_hi / grid_step).ceil() as usize + 1;
    let eps_steps = if dims == 3 {
        (0.03 / grid_step).ceil() as usize + 1
    } else {
        1
    };

    let mut cands: Vec<(f64, Vec<f64>)> = (0..pi_steps)
        .into_par_iter()
        .map(|ip| {
            let pi = (ip as f64 * grid_step).min(omega);
            let mut local: Vec<(f64, Vec<f64>)> = Vec::new();
            for il in 0..lam_steps {
                let lam = (il as f64 * grid_step).min(lam_hi);
                for ie in 0..eps_steps {
                    let mut x = vec![pi, lam];
                    if dims == 3 {
                        x.push(ie as f64 * grid_step);
                    }
                    let t = objective(model, rate, omega, &x);
                    if t.is_finite() {
                        local.push((t, x));
                    }
                }
            }
            local.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            local.truncate(nm_starts);
            local
        })
        .flatten()
        .collect();
    cands.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    cands.truncate(nm_starts);
    if cands.is_empty() {
        return None;
    }

    let mut best = cands[0].clone();
    for (_, start) in &cands {
        let (x, t) = nelder_mead(
            |x| objective(model, rate, omega, x),
            start,
            grid_step,
            4000,
        );
        if t < best.0 {
            best = (t, x);
        }
    }

    let profile = profile_from(model, rate, omega, &best.1);
    let cost = cost_exponent(model, &profile);
    cost.is_feasible().then_some(OptimizeOutcome {
        rate,
        profile,
        cost,
    })
}

/// Maximizes the optimized exponent over the rate: a 200-point sweep finds
/// the bump (unimodality is assumed but the sweep guards it), golden-section
/// polishes the bracket, and the returned point is re-optimized at full
/// fidelity.
#[must_use]
pub fn worst_case_rate(model: AlgorithmModel) -> OptimizeOutcome {
    let cheap = |rate: f64| {
        optimize_at(model, rate, 4e-3, 3)
            .map(|o| o.cost.total)
            .unwrap_or(f64::NEG_INFINITY)
    };

    let sweep = 200usize;
    let (lo, hi) = (0.02f64, 0.5f64);
    let step = (hi - lo) / (sweep - 1) as f64;
    let totals: Vec<(f64, f64)> = (0..sweep)
        .map(|i| {
            let r = lo + i as f64 * step;
            (r, cheap(r))
        })
        .collect();
    let (mut rate, _) = totals
        .iter()
        .copied()
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();

    // Golden-section around the sweep argmax.
    let gr = 0.5 * (5.0f64.sqrt() - 1.0);
    let (mut a, mut b) = ((rate - step).max(lo), (rate + step).min(hi));
    let (mut c, mut d) = (b - gr * (b - a), a + gr * (b - a));
    let (mut fc, mut fd) = (cheap(c), cheap(d));
    for _ in 0..32 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = cheap(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = cheap(d);
        }
    }
    rate = 0.5 * (a + b);

    optimize_params(model, rate).expect("worst-case rate must be feasible")
}

/// Plain Nelder-Mead with +inf as the out-of-feasibility signal.
fn nelder_mead<F>(f: F, start: &[f64], scale: f64, max_iter: usize) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let dim = start.len();
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..dim {
        let mut p = start.to_vec();
        p[i] += scale;
        simplex.push(p);
    }
    let mut scores: Vec<f64> = simplex.iter().map(|p| f(p)).collect();

    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&i, &j| scores[i].partial_cmp(&scores[j]).unwrap());
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];

        if scores[best].is_finite()
            && scores[worst].is_finite()
            && (scores[worst] - scores[best]).abs() < 1e-10
        {
            break;
        }

        let mut centroid = vec![0.0; dim];
        for &i in order.iter().take(dim) {
            for d in 0..dim {
                centroid[d] += simplex[i][d];
            }
        }
        for c in &mut centroid {
            *c /= dim as f64;
        }

        let reflect: Vec<f64> = (0..dim)
            .map(|d| centroid[d] + alpha * (centroid[d] - simplex[worst][d]))
            .collect();
        let fr = f(&reflect);

        if fr < scores[order[0]] {
            let expand: Vec<f64> = (0..dim)
                .map(|d| centroid[d] + gamma * (reflect[d] - centroid[d]))
                .collect();
            let fe = f(&expand);
            if fe < fr {
                simplex[worst] = expand;
                scores[worst] = fe;
            } else {
                simplex[worst] = reflect;
                scores[worst] = fr;
            }
            continue;
        }
        if fr < scores[second_worst] {
            simplex[worst] = reflect;
            scores[worst] = fr;
            continue;
        }

        let contract: Vec<f64> = (0..dim)
            .map(|d| centroid[d] + rho * (simplex[worst][d] - centroid[d]))
            .collect();
        let fcont = f(&contract);
        if fcont < scores[worst] {
            simplex[worst] = contract;
            scores[worst] = fcont;
            continue;
        }

        let anchor = simplex[best].clone();
        for i in 0..=dim {
            if i == best {
                continue;
            }
            for d in 0..dim {
                simplex[i][d] = anchor[d] + sigma * (simplex[i][d] - anchor[d]);
            }
            scores[i] = f(&simplex[i]);
        }
    }

    let (mut bi, mut bt) = (0, scores[0]);
    for (i, &t) in scores.iter().enumerate() {
        if t < bt {
            bi = i;
            bt = t;
        }
    }
    (simplex[bi].clone(), bt)
}
