use crate::{BitMatrix, BitVector, Permutation};

/// Result of reducing a permuted parity-check matrix to windowed systematic
/// form: `U · π(H) = [Q | W]` with `W` zero on the top `window` rows and the
/// identity below, and `sbar = U · s` for the same row operations `U`.
#[derive(Clone, Debug)]
pub struct SystematicForm {
    /// The `(n-k) × (k+window_cols)` left block.
    pub q: BitMatrix,
    /// Transformed syndrome, length `n-k`.
    pub sbar: BitVector,
    /// The column permutation that was applied.
    pub perm: Permutation,
    /// Number of zero-window rows (the `ℓ` of the reduction).
    pub window: usize,
}

/// The chosen last columns were singular. Happens at a constant rate for
/// random permutations; the caller simply resamples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankFailure;

impl std::fmt::Display for RankFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "selected columns are singular")
    }
}

impl SystematicForm {
    /// Number of parity rows `n - k`.
    #[must_use]
    pub fn parity_rows(&self) -> usize {
        self.q.rows()
    }

    /// Width of the `Q` block, `k + window`.
    #[must_use]
    pub fn q_cols(&self) -> usize {
        self.q.cols()
    }

    /// `Q · [frag padded to k+ℓ]` for a fragment living on columns
    /// `[offset, offset + frag.len())` of the `Q` block.
    #[must_use]
    pub fn q_mul_fragment(&self, frag: &BitVector, offset: usize) -> BitVector {
        let mut padded = BitVector::zeros(self.q.cols());
        for i in frag.ones() {
            padded.set(offset + i, true);
        }
        self.q.mul_vec(&padded)
    }

    /// Reassembles a full-length error vector from its `k+ℓ` head and
    /// `n-k-ℓ` tail in permuted coordinates, and pulls it back through the
    /// permutation.
    #[must_use]
    pub fn assemble_error(&self, head: &BitVector, tail: &BitVector) -> BitVector {
        assert_eq!(head.len(), self.q.cols());
        assert_eq!(tail.len(), self.parity_rows() - self.window);
        let mut permuted = BitVector::zeros(self.perm.len());
        for i in head.ones() {
            permuted.set(i, true);
        }
        for i in tail.ones() {
            permuted.set(self.q.cols() + i, true);
        }
        self.perm.unapply(&permuted)
    }
}

/// Reduces `π(H)` to the windowed systematic form of the decoding pipelines.
///
/// Row operations bring the last `n-k-ℓ` permuted columns to
/// `[0 / I_{n-k-ℓ}]`; the same operations are applied to `s`. Pivots are
/// taken left-to-right within that block. Returns `RankFailure` when the
/// block is singular so the caller can resample the permutation.
pub fn to_systematic(
    h: &BitMatrix,
    s: &BitVector,
    window: usize,
    perm: &Permutation,
) -> Result<SystematicForm, RankFailure> {
    let m = h.rows(); // n - k
    let n = h.cols();
    assert_eq!(s.len(), m, "syndrome length must be n-k");
    assert!(window <= m, "window exceeds n-k");
    assert_eq!(perm.len(), n, "permutation length mismatch");

    let ident_cols = m - window; // columns to diagonalize
    let q_cols = n - ident_cols; // k + window

    let mut work = h.permute_columns(perm);
    let mut sbar = s.clone();

    for i in 0..ident_cols {
        let col = q_cols + i;
        let target = window + i;
        // Pivot search among rows not yet fixed as earlier pivots.
        let pivot = (target..m)
            .chain(0..target.min(window))
            .find(|&r| work.get(r, col));
        let Some(pivot) = pivot else {
            return Err(RankFailure);
        };
        if pivot != target {
            work.swap_rows(pivot, target);
            // Mirror the swap on the syndrome.
            let a = sbar.get(pivot);
            let b = sbar.get(target);
            sbar.set(pivot, b);
            sbar.set(target, a);
        }
        for r in 0..m {
            if r != target && work.get(r, col) {
                work.xor_rows(r, target);
                if sbar.get(target) {
                    sbar.flip(r);
                }
            }
        }
    }

    let q = BitMatrix::from_rows((0..m).map(|r| work.row(r).slice(0, q_cols)).collect());
    Ok(SystematicForm {
        q,
        sbar,
        perm: perm.clone(),
        window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check_reconstruction(sf: &SystematicForm, h: &BitMatrix, e: &BitVector, s: &BitVector) {
        // [Q | 0/I] * pi(e) must equal sbar exactly when H e = s.
        assert_eq!(&h.mul_vec(e), s);
        let pe = sf.perm.apply(e);
        let head = pe.slice(0, sf.q_cols());
        let tail = pe.slice(sf.q_cols(), sf.parity_rows() - sf.window);
        let mut lhs = sf.q.mul_vec(&head);
        for i in tail.ones() {
            lhs.flip(sf.window + i);
        }
        assert_eq!(lhs, sf.sbar);
    }

    #[test]
    fn already_systematic_with_zero_window() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let m = 5;
        let k = 4;
        let q = BitMatrix::random(m, k, &mut rng);
        let rows = (0..m)
            .map(|r| {
                q.row(r)
                    .concat(&BitVector::from_support(m, &[r]))
            })
            .collect();
        let h = BitMatrix::from_rows(rows);
        let s = BitVector::random(m, &mut rng);
        let sf = to_systematic(&h, &s, 0, &Permutation::identity(k + m)).unwrap();
        assert_eq!(sf.q, q);
        assert_eq!(sf.sbar, s);
    }

    #[test]
    fn equal_last_columns_are_singular() {
        // n-k = 2, both candidate identity columns equal -> rank failure.
        let h = BitMatrix::from_rows(vec![
            BitVector::from_support(4, &[0, 2, 3]),
            BitVector::from_support(4, &[1, 2, 3]),
        ]);
        let s = BitVector::zeros(2);
        let r = to_systematic(&h, &s, 0, &Permutation::identity(4));
        assert_eq!(r.unwrap_err(), RankFailure);
    }

    #[test]
    fn reconstruction_matches_planted_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let (n, k, ell) = (12, 6, 2);
        for _ in 0..50 {
            let h = BitMatrix::random(n - k, n, &mut rng);
            let e = BitVector::random_weight(n, 3, &mut rng);
            let s = h.mul_vec(&e);
            let perm = Permutation::random(n, &mut rng);
            if let Ok(sf) = to_systematic(&h, &s, ell, &perm) {
                check_reconstruction(&sf, &h, &e, &s);
            }
        }
    }

    #[test]
    fn assemble_error_inverts_the_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let (n, k, ell) = (14, 7, 3);
        let h = BitMatrix::random(n - k, n, &mut rng);
        let e = BitVector::random_weight(n, 4, &mut rng);
        let s = h.mul_vec(&e);
        for _ in 0..20 {
            let perm = Permutation::random(n, &mut rng);
            if let Ok(sf) = to_systematic(&h, &s, ell, &perm) {
                let pe = sf.perm.apply(&e);
                let head = pe.slice(0, k + ell);
                let tail = pe.slice(k + ell, n - k - ell);
                assert_eq!(sf.assemble_error(&head, &tail), e);
            }
        }
    }

    #[test]
    fn success_rate_is_bounded_away_from_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let (n, k) = (48, 24);
        let h = BitMatrix::random(n - k, n, &mut rng);
        let s = BitVector::zeros(n - k);
        let mut ok = 0;
        let trials = 400;
        for _ in 0..trials {
            let perm = Permutation::random(n, &mut rng);
            if to_systematic(&h, &s, 0, &perm).is_ok() {
                ok += 1;
            }
        }
        // Random GF(2) square matrices are invertible with prob ~0.2888.
        assert!(ok as f64 >= 0.25 * trials as f64, "only {ok}/{trials} reductions succeeded");
    }
}
