//! Support-set enumeration helpers shared by the oracle and the list
//! builders.

/// Iterates over all `k`-subsets of `{0, …, n-1}` in lexicographic order of
/// the ascending index tuples.
pub struct Combinations {
    n: usize,
    k: usize,
    state: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    #[must_use]
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            state: (0..k).collect(),
            started: false,
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.state.clone());
        }
        // Advance the rightmost index that still has room.
        let k = self.k;
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.state[i] + 1 <= self.n - (k - i) {
                self.state[i] += 1;
                for j in i + 1..k {
                    self.state[j] = self.state[j - 1] + 1;
                }
                return Some(self.state.clone());
            }
        }
    }
}

/// Exact binomial coefficient; panics on overflow rather than saturating.
#[must_use]
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    for i in 0..k {
        // c_{i+1} = c_i * (n-i) / (i+1); reduce by gcds first so the
        // intermediate never exceeds the result itself.
        let mut mult = (n - i) as u128;
        let mut div = (i + 1) as u128;
        let g = gcd(mult, div);
        mult /= g;
        div /= g;
        let g = gcd(num, div);
        num /= g;
        div /= g;
        debug_assert_eq!(div, 1);
        num = num.checked_mul(mult).expect("binomial overflow");
    }
    num
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
