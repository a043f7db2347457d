//! Formula-versus-spectrum check for the Johnson graph eigenvalue gap.

use exponent_lab::{johnson_gap, johnson_gap_spectral};

#[derive(Clone, Copy, Debug)]
pub struct JohnsonRow {
    pub n: usize,
    pub r: usize,
    pub formula: f64,
    pub spectral: f64,
}

impl JohnsonRow {
    #[must_use]
    pub fn diff(&self) -> f64 {
        (self.formula - self.spectral).abs()
    }
}

/// Every `J(N, r)` with `2 <= N <= n_max`, `1 <= r < N`.
#[must_use]
pub fn check_all(n_max: usize) -> Vec<JohnsonRow> {
    assert!(n_max <= 14, "spectral check limited to N <= 14");
    let mut rows = Vec::new();
    for n in 2..=n_max {
        for r in 1..n {
            rows.push(JohnsonRow {
                n,
                r,
                formula: johnson_gap(n, r),
                spectral: johnson_gap_spectral(n, r),
            });
        }
    }
    rows
}

#[must_use]
pub fn max_diff(rows: &[JohnsonRow]) -> f64 {
    rows.iter().map(JohnsonRow::diff).fold(0.0, f64::max)
}
