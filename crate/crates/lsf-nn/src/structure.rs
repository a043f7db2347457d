use std::collections::{BTreeMap, BTreeSet, HashMap};

use gf2_core::BitVector;

use crate::code::{build_filter_code, FilterCode, LsfError};

/// Parameters of the filtering structure: absolute radii in bits over a
/// `dim`-bit ambient space, plus the polynomial oversampling factor on the
/// filter count.
#[derive(Clone, Copy, Debug)]
pub struct LsfParams {
    pub dim: usize,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub oversample: usize,
}

impl LsfParams {
    pub fn validate(&self) -> Result<(), LsfError> {
        let half = self.dim / 2;
        if self.alpha > half || self.beta > half || self.gamma > half {
            return Err(LsfError::InvalidParams(format!(
                "radii ({}, {}, {}) exceed dim/2 = {half}",
                self.alpha, self.beta, self.gamma
            )));
        }
        if self.gamma > 0 && self.alpha > 0 && self.beta > 0 {
            let diff = self.alpha.abs_diff(self.beta);
            if !(diff < self.gamma && self.gamma < self.alpha + self.beta) {
                return Err(LsfError::InfeasibleRadii {
                    alpha: self.alpha,
                    beta: self.beta,
                    gamma: self.gamma,
                });
            }
        }
        Ok(())
    }
}

/// Touch counts reported by a single query.
#[derive(Clone, Copy, Debug, Default)]
pub struct QueryStats {
    pub buckets_touched: u64,
    pub entries_scanned: u64,
}

/// The mutable near-neighbour index: filter code plus buckets.
///
/// A vector sits in bucket `c` exactly when `dist(v, c) <= alpha`; queries
/// scan the buckets with `dist(c, q) <= beta` and return the stored vectors
/// within `gamma` of the query. Buckets are sorted vectors keyed by value,
/// with a multiplicity counter per entry.
pub struct LsfStructure {
    params: LsfParams,
    code: FilterCode,
    buckets: HashMap<u64, Vec<(BitVector, u32)>>,
    stored: usize,
    /// Buckets touched by inserts so far (one count per relevant filter).
    pub insert_touches: u64,
    /// Buckets touched by removals.
    pub remove_touches: u64,
    /// Removals of vectors that were not present anywhere.
    pub removed_absent: u64,
}

impl LsfStructure {
    /// Builds the filter code for `params` and an empty index.
    pub fn new(params: LsfParams, seed: u64) -> Result<Self, LsfError> {
        params.validate()?;
        let code = build_filter_code(
            params.dim,
            params.alpha,
            params.beta,
            params.gamma,
            params.oversample,
            seed,
        )?;
        Ok(Self::with_code(params, code))
    }

    /// Wraps an existing filter code (shared-code use cases).
    #[must_use]
    pub fn with_code(params: LsfParams, code: FilterCode) -> Self {
        assert_eq!(code.dim(), params.dim);
        Self {
            params,
            code,
            buckets: HashMap::new(),
            stored: 0,
            insert_touches: 0,
            remove_touches: 0,
            removed_absent: 0,
        }
    }

    #[must_use]
    pub fn params(&self) -> &LsfParams {
        &self.params
    }

    #[must_use]
    pub fn code(&self) -> &FilterCode {
        &self.code
    }

    /// Number of stored vectors, counting multiplicity.
    #[must_use]
    pub fn len(&self) -> usize {
        self.stored
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.stored == 0
    }

    /// Adds `v` to every bucket within `alpha`. Duplicates bump a counter.
    pub fn insert(&mut self, v: &BitVector) {
        assert_eq!(v.len(), self.params.dim);
        let ids = self.code.relevant_filters(v, self.params.alpha);
        self.insert_touches += ids.len() as u64;
        for id in ids {
            let bucket = self.buckets.entry(id).or_default();
            match bucket.binary_search_by(|(x, _)| x.cmp(v)) {
                Ok(i) => bucket[i].1 += 1,
                Err(i) => bucket.insert(i, (v.clone(), 1)),
            }
        }
        self.stored += 1;
    }

    /// Removes one copy of `v` from every bucket containing it. Returns
    /// whether the vector was present; removing an absent vector is a no-op
    /// (counted in `removed_absent`).
    pub fn remove(&mut self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.params.dim);
        let ids = self.code.relevant_filters(v, self.params.alpha);
        self.remove_touches += ids.len() as u64;
        let mut present = false;
        for id in ids {
            if let Some(bucket) = self.buckets.get_mut(&id) {
                if let Ok(i) = bucket.binary_search_by(|(x, _)| x.cmp(v)) {
                    present = true;
                    if bucket[i].1 > 1 {
                        bucket[i].1 -= 1;
                    } else {
                        bucket.remove(i);
                    }
                    if bucket.is_empty() {
                        self.buckets.remove(&id);
                    }
                }
            }
        }
        if present {
            self.stored -= 1;
        } else {
            self.removed_absent += 1;
        }
        present
    }

    /// All distinct stored vectors within `gamma` of `q`, reachable through
    /// the `beta`-close buckets.
    #[must_use]
    pub fn query(&self, q: &BitVector) -> Vec<BitVector> {
        self.query_with_stats(q).0
    }

    /// Query plus the touched-bucket and scanned-entry counts.
    #[must_use]
    pub fn query_with_stats(&self, q: &BitVector) -> (Vec<BitVector>, QueryStats) {
        assert_eq!(q.len(), self.params.dim);
        let ids = self.code.relevant_filters(q, self.params.beta);
        let mut stats = QueryStats {
            buckets_touched: ids.len() as u64,
            entries_scanned: 0,
        };
        let mut out = BTreeSet::new();
        for id in ids {
            if let Some(bucket) = self.buckets.get(&id) {
                for (v, _) in bucket {
                    stats.entries_scanned += 1;
                    if v.distance(q) <= self.params.gamma {
                        out.insert(v.clone());
                    }
                }
            }
        }
        (out.into_iter().collect(), stats)
    }

    /// Deterministic snapshot of the bucket contents, for equality checks in
    /// tests and benches.
    #[must_use]
    pub fn snapshot(&self) -> BTreeMap<u64, Vec<(BitVector, u32)>> {
        self.buckets
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect()
    }

    /// Mean bucket load over non-empty buckets.
    #[must_use]
    pub fn mean_bucket_load(&self) -> f64 {
        if self.buckets.is_empty() {
            return 0.0;
        }
        let total: u64 = self
            .buckets
            .values()
            .map(|b| b.iter().map(|(_, c)| u64::from(*c)).sum::<u64>())
            .sum();
        total as f64 / self.buckets.len() as f64
    }
}
