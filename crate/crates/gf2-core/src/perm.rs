use rand::Rng;

use crate::BitVector;

/// A permutation of `{0, …, n-1}`, stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    /// Builds a permutation from an image table; panics if it is not a
    /// bijection on `{0, …, n-1}`.
    #[must_use]
    pub fn from_image(image: Vec<usize>) -> Self {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            assert!(i < n && !seen[i], "image is not a bijection");
            seen[i] = true;
        }
        Self { image }
    }

    /// Uniformly random permutation (Fisher-Yates).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            image.swap(i, j);
        }
        Self { image }
    }

    #[inline]
    #[must_use]
    pub fn len(&self) -> usize {
        self.image.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// Image of index `i`.
    #[inline]
    #[must_use]
    pub fn image(&self, i: usize) -> usize {
        self.image[i]
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        Self { image: inv }
    }

    /// Pushes a vector forward: `apply(v)[p(i)] = v[i]`.
    #[must_use]
    pub fn apply(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.image.len(), "permutation length mismatch");
        let mut out = BitVector::zeros(v.len());
        for i in v.ones() {
            out.set(self.image[i], true);
        }
        out
    }

    /// Pulls a vector back: `unapply(apply(v)) = v`.
    #[must_use]
    pub fn unapply(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.image.len(), "permutation length mismatch");
        let mut out = BitVector::zeros(v.len());
        for i in 0..v.len() {
            if v.get(self.image[i]) {
                out.set(i, true);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn apply_unapply_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = Permutation::random(33, &mut rng);
            let v = BitVector::random(33, &mut rng);
            assert_eq!(p.unapply(&p.apply(&v)), v);
            assert_eq!(p.inverse().apply(&v), p.unapply(&v));
        }
    }

    #[test]
    fn apply_preserves_weight() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let p = Permutation::random(50, &mut rng);
        let v = BitVector::random_weight(50, 7, &mut rng);
        assert_eq!(p.apply(&v).weight(), 7);
    }
}
