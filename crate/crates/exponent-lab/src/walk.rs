use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exponent-level reading of the quantum-walk search cost
/// `T_S + (1/sqrt(eps)) * (T_U / sqrt(delta) + T_C)`:
/// the total is `max(setup, -eps/2 + max(-delta/2 + update, check))`, with
/// every argument a base-2 exponent (so `delta_exp`, `eps_exp` are `<= 0`).
#[must_use]
pub fn quantum_walk_total(setup: f64, update: f64, check: f64, delta_exp: f64, eps_exp: f64) -> f64 {
    setup.max(-eps_exp / 2.0 + (-delta_exp / 2.0 + update).max(check))
}

/// Exponent of the marked-vertex fraction `(r / |L|)^k`.
#[must_use]
pub fn marked_fraction(list_exp: f64, r_exp: f64, k: usize) -> f64 {
    assert!(r_exp <= list_exp + 1e-12, "subsets cannot exceed the list");
    k as f64 * (r_exp - list_exp)
}

/// Monte-Carlo estimate of the marked fraction: samples an `r`-subset of
/// each of `k` lists (one planted element per list) and counts the draws
/// where every subset caught its planted element.
#[must_use]
pub fn empirical_marked_fraction(
    list_size: usize,
    r: usize,
    k: usize,
    trials: u64,
    seed: u64,
) -> f64 {
    assert!(r <= list_size && list_size > 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..trials {
        let mut all = true;
        for _ in 0..k {
            // Planted element sits at index 0; membership of a uniform
            // r-subset is what we sample.
            let caught = sample(&mut rng, list_size, r).into_iter().any(|i| i == 0);
            if !caught {
                all = false;
                break;
            }
        }
        if all {
            hits += 1;
        }
    }
    hits as f64 / trials as f64
}
