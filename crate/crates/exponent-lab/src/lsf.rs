use crate::entropy::{entropy, entropy_inv};

/// Joint coordinate-type distribution of a triple `(v, q, c)` with pairwise
/// relative distances `γ = dist(v,q)`, `α = dist(v,c)`, `β = dist(q,c)`,
/// together with the pair marginal for `(v, q)`.
///
/// The eight entries obey the symmetries `p000 = p111`, `p001 = p110`,
/// `p010 = p101`, `p100 = p011` and sum to one.
#[derive(Clone, Copy, Debug)]
pub struct ConfigVector {
    pub p000: f64,
    pub p001: f64,
    pub p010: f64,
    pub p100: f64,
    pub pair00: f64,
    pub pair01: f64,
}

impl ConfigVector {
    /// All eight triple entries in index order `000..111`.
    #[must_use]
    pub fn triple_entries(&self) -> [f64; 8] {
        [
            self.p000, self.p001, self.p010, self.p100, // 000 001 010 011
            self.p100, self.p010, self.p001, self.p000, // 100 101 110 111
        ]
    }

    /// The four pair entries `00, 01, 10, 11`.
    #[must_use]
    pub fn pair_entries(&self) -> [f64; 4] {
        [self.pair00, self.pair01, self.pair01, self.pair00]
    }

    /// Entropy of the triple distribution.
    #[must_use]
    pub fn triple_entropy(&self) -> f64 {
        dist_entropy(&self.triple_entries())
    }

    /// Entropy of the pair distribution (equals `1 + H(γ)`).
    #[must_use]
    pub fn pair_entropy(&self) -> f64 {
        dist_entropy(&self.pair_entries())
    }
}

fn dist_entropy(p: &[f64]) -> f64 {
    p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum()
}

/// Solves the distance/uniformity constraints for the filter configuration.
/// Feasibility requires every entry nonnegative, i.e. (up to symmetry)
/// `|α-β| <= γ <= α+β` alongside radii at most 1/2. Returns `None` outside
/// that region.
#[must_use]
pub fn config_vector(alpha: f64, beta: f64, gamma: f64) -> Option<ConfigVector> {
    if !(0.0..=0.5).contains(&alpha) || !(0.0..=0.5).contains(&beta) || !(0.0..=0.5).contains(&gamma)
    {
        return None;
    }
    let cfg = ConfigVector {
        p000: 0.5 - 0.25 * (gamma + beta + alpha),
        p001: 0.25 * (gamma + beta - alpha),
        p010: 0.25 * (gamma + alpha - beta),
        p100: 0.25 * (beta + alpha - gamma),
        pair00: 0.5 * (1.0 - gamma),
        pair01: 0.5 * gamma,
    };
    let tol = -1e-12;
    if cfg.p000 < tol || cfg.p001 < tol || cfg.p010 < tol || cfg.p100 < tol {
        return None;
    }
    Some(cfg)
}

/// Per-dimension exponent of the number of filters needed for a
/// `(α, β)`-filtered `γ`-near-neighbour search:
/// `1 - (H(p(α,β,γ)) - H(p(γ)))`. `None` when the triple is infeasible.
#[must_use]
pub fn lsf_filter_exponent(alpha: f64, beta: f64, gamma: f64) -> Option<f64> {
    let cfg = config_vector(alpha, beta, gamma)?;
    Some(1.0 - (cfg.triple_entropy() - cfg.pair_entropy()))
}

/// Closed form for the balanced case `α = β = H⁻¹(1 - λ_L)`:
/// `(1-γ)(1 - H((H⁻¹(1-λ_L) - γ/2) / (1-γ)))`.
#[must_use]
pub fn may_ozerov_filter_exponent(list_exp: f64, gamma: f64) -> f64 {
    let a = entropy_inv(1.0 - list_exp);
    (1.0 - gamma) * (1.0 - entropy((a - gamma / 2.0) / (1.0 - gamma)))
}

/// Per-operation cost exponents of the filtering engine for a structure
/// holding `2^{list_exp · n}` vectors.
#[derive(Clone, Copy, Debug)]
pub struct LsfCosts {
    pub update: f64,
    pub preprocess: f64,
    pub query: f64,
    pub bucket_load: f64,
}

/// Costs per the filtering analysis: an update touches
/// `|C| · 2^{(H(α)-1)n}` buckets, preprocessing pays that per stored vector,
/// a query touches `|C| · 2^{(H(β)-1)n}` buckets and scans their expected
/// load `|L| · 2^{(H(α)-1)n}`.
#[must_use]
pub fn lsf_cost_exponents(alpha: f64, beta: f64, gamma: f64, list_exp: f64) -> Option<LsfCosts> {
    let filter = lsf_filter_exponent(alpha, beta, gamma)?;
    let update = filter + entropy(alpha) - 1.0;
    let bucket_load = list_exp + entropy(alpha) - 1.0;
    Some(LsfCosts {
        update,
        preprocess: list_exp + update,
        query: filter + entropy(beta) - 1.0 + bucket_load.max(0.0),
        bucket_load,
    })
}
