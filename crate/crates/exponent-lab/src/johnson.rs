use nalgebra::DMatrix;

/// Eigenvalue gap of the Johnson graph `J(N, r)`: `N / (r (N - r))`.
#[must_use]
pub fn johnson_gap(n: usize, r: usize) -> f64 {
    assert!(r >= 1 && r < n, "need 1 <= r < N");
    n as f64 / (r as f64 * (n - r) as f64)
}

/// Spectral gap of `J(N, r)` computed from scratch: vertices are the
/// `r`-subsets of an `N`-set, adjacent when they share `r-1` elements; the
/// gap is one minus the second-largest eigenvalue of the degree-normalized
/// adjacency operator. Dense eigensolve, so restricted to `N <= 14`.
#[must_use]
pub fn johnson_gap_spectral(n: usize, r: usize) -> f64 {
    assert!(r >= 1 && r < n, "need 1 <= r < N");
    assert!(n <= 14, "spectral check limited to N <= 14");
    let verts = subsets_as_masks(n, r);
    let v = verts.len();
    let degree = (r * (n - r)) as f64;
    let mut adj = DMatrix::<f64>::zeros(v, v);
    for i in 0..v {
        for j in (i + 1)..v {
            if (verts[i] & verts[j]).count_ones() as usize == r - 1 {
                adj[(i, j)] = 1.0 / degree;
                adj[(j, i)] = 1.0 / degree;
            }
        }
    }
    let eig = adj.symmetric_eigenvalues();
    let mut vals: Vec<f64> = eig.iter().copied().collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    1.0 - vals[1]
}

fn subsets_as_masks(n: usize, r: usize) -> Vec<u16> {
    let mut out = Vec::new();
    for mask in 0u16..(1 << n) {
        if mask.count_ones() as usize == r {
            out.push(mask);
        }
    }
    out
}
