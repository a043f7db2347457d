use std::fmt;

use gf2_core::BitVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Refusals from the filter-code builder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LsfError {
    /// The `(alpha, beta, gamma)` triple admits no filter configuration.
    InfeasibleRadii { alpha: usize, beta: usize, gamma: usize },
    /// The requested filter count is beyond what can be enumerated.
    TooManyFilters { target: u128 },
    InvalidParams(String),
}

impl fmt::Display for LsfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InfeasibleRadii { alpha, beta, gamma } => {
                write!(f, "no filter configuration for alpha={alpha}, beta={beta}, gamma={gamma}")
            }
            Self::TooManyFilters { target } => {
                write!(f, "cannot enumerate {target} filters")
            }
            Self::InvalidParams(m) => write!(f, "invalid parameters: {m}"),
        }
    }
}

impl std::error::Error for LsfError {}

#[derive(Debug)]
struct Block {
    offset: usize,
    len: usize,
    /// Index stride of this block in the flat filter id.
    stride: u64,
    codewords: Vec<u64>,
}

/// A product ("strips") filter code: each filter is a concatenation of one
/// codeword per block, so the set of filters near a point is enumerable
/// block by block with pruning instead of by full scan.
#[derive(Debug)]
pub struct FilterCode {
    dim: usize,
    blocks: Vec<Block>,
}

const MAX_TARGET: u128 = 1 << 40;

/// Builds a filter code sized for the `(alpha, beta, gamma)` configuration:
/// the count target is `2^{f·dim} · oversample` with `f` the configuration's
/// filter exponent. Blocks have length `3·⌈log2 dim⌉` (see
/// [`build_filter_code_with_block_factor`] to tune), with uniformly sampled
/// distinct codewords per block; fully deterministic in `seed`.
///
/// Requests at or above `2^dim` filters collapse to the exhaustive code.
pub fn build_filter_code(
    dim: usize,
    alpha: usize,
    beta: usize,
    gamma: usize,
    oversample: usize,
    seed: u64,
) -> Result<FilterCode, LsfError> {
    build_filter_code_with_block_factor(dim, alpha, beta, gamma, oversample, seed, 3)
}

/// As [`build_filter_code`] with an explicit block-length factor `c0`
/// (blocks of length `c0·⌈log2 dim⌉`). Larger blocks behave closer to
/// independent random filters at the cost of slower filter enumeration.
pub fn build_filter_code_with_block_factor(
    dim: usize,
    alpha: usize,
    beta: usize,
    gamma: usize,
    oversample: usize,
    seed: u64,
    c0: usize,
) -> Result<FilterCode, LsfError> {
    if dim == 0 || dim > 1 << 16 {
        return Err(LsfError::InvalidParams(format!("bad dimension {dim}")));
    }
    let rel = |x: usize| x as f64 / dim as f64;
    let f = exponent_lab::lsf_filter_exponent(rel(alpha), rel(beta), rel(gamma)).ok_or(
        LsfError::InfeasibleRadii { alpha, beta, gamma },
    )?;
    let target = ((f * dim as f64).exp2() * oversample as f64).ceil() as u128;
    let target = target.max(1);
    if target > MAX_TARGET {
        return Err(LsfError::TooManyFilters { target });
    }
    let exhaustive = dim < 128 && target >= (1u128 << dim);
    let target = if exhaustive { 1u128 << dim } else { target };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blen = (c0 * (dim.max(2) as f64).log2().ceil() as usize).clamp(1, dim).min(40);
    let nblocks = (dim / blen).max(1);
    let mut lens = vec![dim / nblocks; nblocks];
    for (i, len) in lens.iter_mut().enumerate() {
        if i < dim % nblocks {
            *len += 1;
        }
    }

    let mut blocks = Vec::with_capacity(nblocks);
    let mut offset = 0usize;
    let mut needed = target;
    let mut stride = 1u64;
    for (i, &len) in lens.iter().enumerate() {
        let remaining = (nblocks - i) as f64;
        let universe: u128 = 1u128 << len;
        let per = if exhaustive {
            universe
        } else {
            let ideal = (needed as f64).powf(1.0 / remaining).ceil() as u128;
            ideal.clamp(1, universe)
        };
        let codewords = sample_distinct(len, per as usize, &mut rng, exhaustive);
        needed = needed.div_ceil(per).max(1);
        blocks.push(Block {
            offset,
            len,
            stride,
            codewords,
        });
        stride = stride
            .checked_mul(per as u64)
            .ok_or(LsfError::TooManyFilters { target })?;
        offset += len;
    }
    debug_assert_eq!(offset, dim);
    Ok(FilterCode { dim, blocks })
}

fn sample_distinct(len: usize, count: usize, rng: &mut ChaCha8Rng, exhaustive: bool) -> Vec<u64> {
    let universe = 1u64 << len;
    if exhaustive || count as u64 >= universe {
        return (0..universe).collect();
    }
    // Floyd's sampling: uniform distinct draw in O(count) memory.
    let mut chosen = std::collections::HashSet::with_capacity(count);
    for j in (universe - count as u64)..universe {
        let t = rng.gen_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let mut out: Vec<u64> = chosen.into_iter().collect();
    out.sort_unstable();
    out
}

impl FilterCode {
    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Total number of filters (product of the block code sizes).
    #[must_use]
    pub fn filter_count(&self) -> u128 {
        self.blocks
            .iter()
            .map(|b| b.codewords.len() as u128)
            .product()
    }

    /// Materializes the filter vector behind a flat index.
    #[must_use]
    pub fn codeword(&self, mut id: u64) -> BitVector {
        let mut v = BitVector::zeros(self.dim);
        for b in self.blocks.iter().rev() {
            let idx = (id / b.stride) as usize;
            id %= b.stride;
            let cw = b.codewords[idx];
            for bit in 0..b.len {
                if (cw >> bit) & 1 == 1 {
                    v.set(b.offset + bit, true);
                }
            }
        }
        v
    }

    /// Iterates every filter id (exhaustive scan; test oracle and tiny
    /// codes only).
    pub fn all_ids(&self) -> impl Iterator<Item = u64> + '_ {
        let total = self.filter_count();
        assert!(total <= u64::MAX as u128);
        0..total as u64
    }

    /// Exactly the filters within `radius` of `x`, found by block-wise
    /// enumeration with branch-and-bound pruning on the accumulated
    /// distance.
    #[must_use]
    pub fn relevant_filters(&self, x: &BitVector, radius: usize) -> Vec<u64> {
        assert_eq!(x.len(), self.dim, "query dimension mismatch");
        // Distances from x's projection to every codeword, per block.
        let dists: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let proj = x.window_u64(b.offset, b.len);
                b.codewords
                    .iter()
                    .map(|&c| (c ^ proj).count_ones() as usize)
                    .collect()
            })
            .collect();
        let mut suffix_min = vec![0usize; self.blocks.len() + 1];
        for i in (0..self.blocks.len()).rev() {
            suffix_min[i] = suffix_min[i + 1] + dists[i].iter().min().copied().unwrap_or(0);
        }
        let mut out = Vec::new();
        self.dfs(0, 0, 0, radius, &dists, &suffix_min, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        block: usize,
        acc: usize,
        id: u64,
        radius: usize,
        dists: &[Vec<usize>],
        suffix_min: &[usize],
        out: &mut Vec<u64>,
    ) {
        if block == self.blocks.len() {
            out.push(id);
            return;
        }
        let stride = self.blocks[block].stride;
        for (i, &d) in dists[block].iter().enumerate() {
            let next = acc + d;
            if next + suffix_min[block + 1] <= radius {
                self.dfs(block + 1, next, id + i as u64 * stride, radius, dists, suffix_min, out);
            }
        }
    }
}
