/// Binary entropy `H(x) = -x log2 x - (1-x) log2(1-x)` on `[0,1]`.
#[must_use]
pub fn entropy(x: f64) -> f64 {
    assert!((0.0..=1.0).contains(&x), "entropy argument {x} outside [0,1]");
    if x == 0.0 || x == 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// Inverse of the entropy on the branch `[0, 1/2]`, by bisection to 1e-12.
#[must_use]
pub fn entropy_inv(y: f64) -> f64 {
    assert!((0.0..=1.0).contains(&y), "entropy_inv argument {y} outside [0,1]");
    if y <= 0.0 {
        return 0.0;
    }
    if y >= 1.0 {
        return 0.5;
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if entropy(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `log2 C(a·n, b·n) / n = a · H(b/a)`; `-inf` signals an impossible
/// binomial (`b` outside `[0, a]`).
#[must_use]
pub fn binom_exp(a: f64, b: f64) -> f64 {
    if b < -1e-15 || b > a + 1e-15 {
        return f64::NEG_INFINITY;
    }
    if a <= 0.0 {
        return if b.abs() <= 1e-15 { 0.0 } else { f64::NEG_INFINITY };
    }
    a * entropy((b / a).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_endpoints() {
        assert_eq!(entropy(0.0), 0.0);
        assert_eq!(entropy(1.0), 0.0);
        assert!((entropy(0.5) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn binom_exp_half() {
        assert!((binom_exp(0.5, 0.25) - 0.5).abs() < 1e-15);
        assert_eq!(binom_exp(0.3, 0.4), f64::NEG_INFINITY);
        assert_eq!(binom_exp(0.3, -0.1), f64::NEG_INFINITY);
        assert_eq!(binom_exp(0.0, 0.0), 0.0);
    }

    #[test]
    fn inverse_round_trips() {
        // Bisection oracle value for H(w) = 1/2.
        assert!((entropy_inv(0.5) - 0.110028).abs() < 1e-5);
        for i in 1..50 {
            let y = i as f64 / 50.0;
            let x = entropy_inv(y);
            assert!(x <= 0.5);
            assert!((entropy(x) - y).abs() < 1e-10, "at y = {y}");
        }
    }
}
