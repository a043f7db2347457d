use std::fmt;

use rand::Rng;

use crate::{BitVector, Permutation};

/// A binary matrix stored as packed rows.
///
/// Row-major layout: merges and syndrome checks are row operations, and the
/// systematic-form reduction only ever XORs whole rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: (0..rows).map(|_| BitVector::zeros(cols)).collect(),
        }
    }

    /// Builds a matrix from rows; all rows must have equal length.
    #[must_use]
    pub fn from_rows(rows: Vec<BitVector>) -> Self {
        let cols = rows.first().map_or(0, BitVector::len);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has length {}", r.len());
        }
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::from_rows((0..rows).map(|_| BitVector::random(cols, rng)).collect())
    }

    /// Identity matrix.
    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    #[inline]
    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    #[must_use]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    #[inline]
    #[must_use]
    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    /// Column `c` as a vector of length `rows`.
    #[must_use]
    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_fn(self.rows, |r| self.get(r, c))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    /// XORs row `src` into row `dst`.
    pub fn xor_rows(&mut self, dst: usize, src: usize) {
        assert_ne!(dst, src, "xor_rows with dst == src");
        let (lo, hi) = if dst < src { (dst, src) } else { (src, dst) };
        let (head, tail) = self.data.split_at_mut(hi);
        if dst < src {
            head[lo].xor_assign(&tail[0]);
        } else {
            tail[0].xor_assign(&head[lo]);
        }
    }

    /// Matrix-vector product over GF(2): `result[i] = <row_i, v>`.
    #[must_use]
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "mul_vec dimension mismatch");
        BitVector::from_fn(self.rows, |r| self.data[r].dot(v))
    }

    /// Column permutation: column `j` of the input becomes column `p(j)` of
    /// the output, so that `permute(M, p) * p(v) == M * v`.
    #[must_use]
    pub fn permute_columns(&self, p: &Permutation) -> Self {
        assert_eq!(p.len(), self.cols, "permutation length mismatch");
        let mut out = Self::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in self.data[r].ones() {
                out.data[r].set(p.image(c), true);
            }
        }
        out
    }

    /// Rank over GF(2); destroys nothing (works on a copy).
    #[must_use]
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let pivot = (rank..m.rows).find(|&r| m.get(r, c));
            let Some(pivot) = pivot else { continue };
            m.swap_rows(rank, pivot);
            for r in 0..m.rows {
                if r != rank && m.get(r, c) {
                    m.xor_rows(r, rank);
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}:", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn mul_by_zero_vector_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = BitMatrix::random(7, 13, &mut rng);
        assert!(m.mul_vec(&BitVector::zeros(13)).is_zero());
    }

    #[test]
    fn identity_preserves_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = BitVector::random(9, &mut rng);
        assert_eq!(BitMatrix::identity(9).mul_vec(&v), v);
    }

    #[test]
    fn unit_vector_probe_extracts_columns() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = BitMatrix::random(4, 6, &mut rng);
        for j in 0..6 {
            let e = BitVector::from_support(6, &[j]);
            assert_eq!(m.mul_vec(&e), m.column(j), "column {j}");
        }
    }

    #[test]
    fn mul_vec_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = BitMatrix::random(10, 20, &mut rng);
        for _ in 0..20 {
            let u = BitVector::random(20, &mut rng);
            let v = BitVector::random(20, &mut rng);
            assert_eq!(m.mul_vec(&u.xor(&v)), m.mul_vec(&u).xor(&m.mul_vec(&v)));
        }
    }

    #[test]
    fn two_column_swap_on_2x2() {
        // [[1,0],[1,1]] with columns swapped is [[0,1],[1,1]].
        let m = BitMatrix::from_rows(vec![
            BitVector::from_support(2, &[0]),
            BitVector::from_support(2, &[0, 1]),
        ]);
        let p = Permutation::from_image(vec![1, 0]);
        let s = m.permute_columns(&p);
        assert!(!s.get(0, 0) && s.get(0, 1));
        assert!(s.get(1, 0) && s.get(1, 1));
    }

    #[test]
    fn permutation_roundtrip_on_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let m = BitMatrix::random(5, 12, &mut rng);
        let p = Permutation::random(12, &mut rng);
        assert_eq!(m.permute_columns(&p).permute_columns(&p.inverse()), m);
        assert_eq!(m.permute_columns(&Permutation::identity(12)), m);
    }

    #[test]
    fn permuted_matrix_times_permuted_vector_is_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = BitMatrix::random(6, 14, &mut rng);
        let p = Permutation::random(14, &mut rng);
        let v = BitVector::random(14, &mut rng);
        assert_eq!(m.permute_columns(&p).mul_vec(&p.apply(&v)), m.mul_vec(&v));
    }

    #[test]
    fn rank_of_identity_and_duplicates() {
        assert_eq!(BitMatrix::identity(8).rank(), 8);
        let row = BitVector::from_support(4, &[1, 3]);
        let m = BitMatrix::from_rows(vec![row.clone(), row]);
        assert_eq!(m.rank(), 1);
    }
}
