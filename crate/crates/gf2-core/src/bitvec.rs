use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

/// A fixed-length binary vector packed into 64-bit words.
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Unused tail bits of
/// the last word are kept zero so that equality, ordering and weight can work
/// on whole words. The length is fixed at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVector {
    /// All-zero vector of the given length.
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// Vector with ones exactly at the given positions.
    #[must_use]
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    /// Builds a vector from a closure mapping position to bit.
    #[must_use]
    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    /// Uniformly random vector.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut words: Vec<u64> = (0..word_count(len)).map(|_| rng.gen()).collect();
        mask_tail(&mut words, len);
        Self { len, words }
    }

    /// Uniformly random vector of Hamming weight exactly `w`.
    ///
    /// Uses a partial Fisher-Yates shuffle over positions, so the support is
    /// a uniform `w`-subset.
    pub fn random_weight<R: Rng + ?Sized>(len: usize, w: usize, rng: &mut R) -> Self {
        assert!(w <= len, "weight {w} exceeds length {len}");
        let mut idx: Vec<usize> = (0..len).collect();
        let mut v = Self::zeros(len);
        for i in 0..w {
            let j = rng.gen_range(i..len);
            idx.swap(i, j);
            v.set(idx[i], true);
        }
        v
    }

    #[inline]
    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// Hamming weight (number of set bits).
    #[must_use]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Hamming distance to `other`; lengths must match.
    #[must_use]
    pub fn distance(&self, other: &Self) -> usize {
        assert_eq!(
            self.len, other.len,
            "distance between vectors of different lengths"
        );
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor of vectors of different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Parity of the AND with `other` (the GF(2) inner product).
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors of different lengths");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Iterator over the positions of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Copy of the bit range `[start, start + len)` as a new vector.
    #[must_use]
    pub fn slice(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.len, "slice out of range");
        Self::from_fn(len, |i| self.get(start + i))
    }

    /// The bit range `[start, start + width)` packed into a `u64`
    /// (bit `start` becomes the least significant bit). `width <= 64`.
    #[must_use]
    pub fn window_u64(&self, start: usize, width: usize) -> u64 {
        assert!(width <= 64, "window wider than 64 bits");
        assert!(start + width <= self.len, "window out of range");
        if width == 0 {
            return 0;
        }
        let w0 = start / 64;
        let off = start % 64;
        let mut val = self.words[w0] >> off;
        if off + width > 64 {
            val |= self.words[w0 + 1] << (64 - off);
        }
        if width < 64 {
            val &= (1u64 << width) - 1;
        }
        val
    }

    /// Concatenation `self || other`.
    #[must_use]
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Weight restricted to the bit range `[start, end)`.
    #[must_use]
    pub fn weight_in_range(&self, start: usize, end: usize) -> usize {
        assert!(start <= end && end <= self.len, "range out of bounds");
        (start..end).filter(|&i| self.get(i)).count()
    }

    /// Raw packed words (tail bits zero).
    #[must_use]
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

fn mask_tail(words: &mut [u64], len: usize) {
    let tail = len % 64;
    if tail != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << tail) - 1;
        }
    }
}

impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.cmp(&other.words))
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zeros_have_weight_zero() {
        let v = BitVector::zeros(131);
        assert_eq!(v.weight(), 0);
        assert!(v.is_zero());
    }

    #[test]
    fn distance_of_identical_vectors_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = BitVector::random(97, &mut rng);
        assert_eq!(v.distance(&v), 0);
    }

    #[test]
    fn hand_counted_distance() {
        // 10110 vs 00111 differ at positions 0 and 3.
        let u = BitVector::from_support(5, &[0, 2, 3]);
        let v = BitVector::from_support(5, &[2, 3, 4]);
        assert_eq!(u.distance(&v), 2);
    }

    #[test]
    fn window_extraction_across_word_boundary() {
        let v = BitVector::from_support(130, &[60, 63, 64, 65, 100]);
        assert_eq!(v.window_u64(60, 8), 0b0011_1001);
        assert_eq!(v.window_u64(100, 1), 1);
        assert_eq!(v.window_u64(0, 0), 0);
    }

    #[test]
    fn random_weight_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for w in [0, 1, 5, 20, 64] {
            let v = BitVector::random_weight(64, w, &mut rng);
            assert_eq!(v.weight(), w);
        }
    }

    #[test]
    fn ones_iterates_support_in_order() {
        let v = BitVector::from_support(200, &[0, 63, 64, 127, 199]);
        let got: Vec<usize> = v.ones().collect();
        assert_eq!(got, vec![0, 63, 64, 127, 199]);
    }

    proptest! {
        #[test]
        fn xor_distance_agree(seed in 0u64..1000, len in 1usize..200) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = BitVector::random(len, &mut rng);
            let v = BitVector::random(len, &mut rng);
            prop_assert_eq!(u.distance(&v), u.xor(&v).weight());
        }

        #[test]
        fn slice_concat_roundtrip(seed in 0u64..1000, a in 1usize..100, b in 1usize..100) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = BitVector::random(a, &mut rng);
            let v = BitVector::random(b, &mut rng);
            let c = u.concat(&v);
            prop_assert_eq!(c.slice(0, a), u);
            prop_assert_eq!(c.slice(a, b), v);
        }
    }
}
