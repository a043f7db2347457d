use gf2_core::comb::binomial_u128;

/// Parameters shared by the list-based decoders.
///
/// `p` is the error weight carried by the first `k+ℓ` permuted coordinates,
/// `ell` the exact-matching zero window, `ell_prime` the Shamir-Schroeppel
/// sub-window used by the near-neighbour decoder (0 when unused) and `eps`
/// the extra overlap weight of BJMM (0 for MMT).
///
/// Rounding conventions: half splits give the left half the ceiling; list
/// builders enumerate `⌊p/2⌋`-weight halves, so the solvers require the
/// divisibility stated in their preconditions (`p` even for Dumer,
/// `p ≡ 0 mod 4` and `eps` even for MMT/BJMM).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecodingParams {
    pub p: usize,
    pub ell: usize,
    pub ell_prime: usize,
    pub eps: usize,
}

impl DecodingParams {
    #[must_use]
    pub fn new(p: usize, ell: usize) -> Self {
        Self {
            p,
            ell,
            ell_prime: 0,
            eps: 0,
        }
    }

    pub fn check_ranges(&self, n: usize, k: usize, w: usize) -> Result<(), String> {
        if self.p > w {
            return Err(format!("p = {} exceeds w = {w}", self.p));
        }
        if self.ell > n - k {
            return Err(format!("ell = {} exceeds n-k = {}", self.ell, n - k));
        }
        if self.ell_prime > self.ell {
            return Err(format!(
                "ell_prime = {} exceeds ell = {}",
                self.ell_prime, self.ell
            ));
        }
        Ok(())
    }
}

/// Expected number of permutation trials `1/P(p, ℓ)` with
/// `P = C(k+ℓ,p) · C(n-k-ℓ, w-p) / C(n,w)`; `ℓ = 0` gives the plain
/// information-set probability.
///
/// Returns `f64::INFINITY` when the split is combinatorially impossible.
/// Exact 128-bit binomials are used whenever they fit (all `n ≤ 130`), with
/// a log-sum fallback above that.
#[must_use]
pub fn predicted_trials(n: usize, k: usize, w: usize, params: &DecodingParams) -> f64 {
    let (p, ell) = (params.p, params.ell);
    if p > w || k + ell > n || w - p > n - k - ell {
        return f64::INFINITY;
    }
    if n <= 130 {
        let num = binomial_u128((k + ell) as u64, p as u64)
            * binomial_u128((n - k - ell) as u64, (w - p) as u64);
        if num == 0 {
            return f64::INFINITY;
        }
        let den = binomial_u128(n as u64, w as u64);
        den as f64 / num as f64
    } else {
        let ln = ln_binomial(n, w) - ln_binomial(k + ell, p) - ln_binomial(n - k - ell, w - p);
        ln.exp()
    }
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (0..k)
        .map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln())
        .sum()
}
