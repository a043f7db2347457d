//! Random decoding instances with planted errors at Gilbert-Varshamov
//! weight, plus a brute-force oracle for small lengths.
//!
//! Every instance is generated deterministically from a seed so that solver
//! statistics are reproducible across runs and platforms.

use gf2_core::comb::Combinations;
use gf2_core::{BitMatrix, BitVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Binary entropy `H(x) = -x log2 x - (1-x) log2 (1-x)`.
#[must_use]
pub fn binary_entropy(x: f64) -> f64 {
    assert!((0.0..=1.0).contains(&x), "entropy argument out of [0,1]");
    if x == 0.0 || x == 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// The relative Gilbert-Varshamov weight: the `ω ∈ (0, 1/2]` with
/// `H(ω) = 1 - rate`, found by bisection to 1e-12.
#[must_use]
pub fn gv_relative_weight(rate: f64) -> f64 {
    assert!(rate > 0.0 && rate < 1.0, "rate must be in (0,1)");
    let target = 1.0 - rate;
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if binary_entropy(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A syndrome decoding instance `(H, s, w)`, optionally with the planted
/// error kept around as ground truth.
#[derive(Clone, Debug)]
pub struct IsdInstance {
    pub n: usize,
    pub k: usize,
    pub w: usize,
    pub h: BitMatrix,
    pub s: BitVector,
    pub planted: Option<BitVector>,
}

impl IsdInstance {
    /// Basic shape checks; panics on violation.
    pub fn validate(&self) {
        assert!(self.k > 0 && self.k < self.n, "need 0 < k < n");
        assert!(self.w > 0 && self.w <= self.n, "need 0 < w <= n");
        assert_eq!(self.h.rows(), self.n - self.k);
        assert_eq!(self.h.cols(), self.n);
        assert_eq!(self.s.len(), self.n - self.k);
        if let Some(e) = &self.planted {
            assert_eq!(e.len(), self.n);
            assert_eq!(e.weight(), self.w, "planted weight mismatch");
            assert_eq!(self.h.mul_vec(e), self.s, "planted error does not match syndrome");
        }
    }
}

/// Generates a random full-row-rank instance with a planted error of
/// Gilbert-Varshamov weight `round(n * gv(k/n))`.
///
/// Deterministic in `seed`. Resamples the matrix up to 1000 times waiting
/// for full rank (random GF(2) matrices are full rank with probability
/// > 0.28, so this never triggers in practice).
#[must_use]
pub fn generate_instance(n: usize, k: usize, seed: u64) -> IsdInstance {
    assert!(k > 0 && k < n, "need 0 < k < n");
    let w = (n as f64 * gv_relative_weight(k as f64 / n as f64)).round() as usize;
    let w = w.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut h = None;
    for _ in 0..1000 {
        let cand = BitMatrix::random(n - k, n, &mut rng);
        if cand.rank() == n - k {
            h = Some(cand);
            break;
        }
    }
    let h = h.expect("no full-rank matrix in 1000 samples");
    let planted = BitVector::random_weight(n, w, &mut rng);
    let s = h.mul_vec(&planted);
    let inst = IsdInstance {
        n,
        k,
        w,
        h,
        s,
        planted: Some(planted),
    };
    inst.validate();
    inst
}

/// True iff `H eᵗ = s` and `wt(e) <= w`.
#[must_use]
pub fn verify_solution(inst: &IsdInstance, e: &BitVector) -> bool {
    assert_eq!(e.len(), inst.n, "candidate has wrong length");
    e.weight() <= inst.w && inst.h.mul_vec(e) == inst.s
}

/// Exhaustive search for the minimum-weight solution, weights `0..=w`.
///
/// Within a weight class, supports are enumerated in lexicographic index
/// order, so ties resolve to the smallest support. Returns `None` when no
/// solution of weight at most `w` exists. Enforced to `n <= 32`.
#[must_use]
pub fn brute_force_min_weight(inst: &IsdInstance) -> Option<BitVector> {
    assert!(inst.n <= 32, "oracle restricted to n <= 32");
    for weight in 0..=inst.w {
        for support in Combinations::new(inst.n, weight) {
            let e = BitVector::from_support(inst.n, &support);
            if inst.h.mul_vec(&e) == inst.s {
                return Some(e);
            }
        }
    }
    None
}
