use gf2_core::comb::{binomial_u128, Combinations};
use gf2_core::{BitVector, SystematicForm};

use crate::driver::SolveError;

/// One list element: an error fragment on the `k+ℓ` head (padded to the full
/// head width so fragments from different halves XOR cleanly) together with
/// its syndrome image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListEntry {
    /// Fragment on the `k+ℓ` permuted head coordinates.
    pub epart: BitVector,
    /// `Q · epart`, plus the folded-in `s̄` on the query side.
    pub image: BitVector,
}

/// Rough per-entry heap footprint, used for the memory-cap refusal.
pub(crate) fn entry_bytes(head_bits: usize, image_bits: usize) -> u128 {
    let words = |b: usize| b.div_ceil(64) as u128;
    (words(head_bits) + words(image_bits)) * 8 + 96
}

pub(crate) fn check_cap(
    entries: u128,
    head_bits: usize,
    image_bits: usize,
    cap: u64,
) -> Result<(), SolveError> {
    let required = entries.saturating_mul(entry_bytes(head_bits, image_bits));
    if required > cap as u128 {
        return Err(SolveError::MemoryCap {
            required_bytes: required,
            cap_bytes: cap,
        });
    }
    Ok(())
}

/// Enumerates all weight-`weight` fragments on `[offset, offset+width)` of
/// the head and maps them through `Q`, XORing `extra` into every image when
/// given (the `s̄` fold for query-side lists).
pub(crate) fn enumerate_fragments(
    sf: &SystematicForm,
    offset: usize,
    width: usize,
    weight: usize,
    extra: Option<&BitVector>,
) -> Vec<ListEntry> {
    let head = sf.q_cols();
    // Precompute the needed Q columns once; images are XORs of `weight` of them.
    let cols: Vec<BitVector> = (offset..offset + width).map(|c| sf.q.column(c)).collect();
    let base = match extra {
        Some(v) => v.clone(),
        None => BitVector::zeros(sf.parity_rows()),
    };
    let mut out = Vec::new();
    for support in Combinations::new(width, weight) {
        let mut epart = BitVector::zeros(head);
        let mut image = base.clone();
        for &i in &support {
            epart.set(offset + i, true);
            image.xor_assign(&cols[i]);
        }
        out.push(ListEntry { epart, image });
    }
    out
}

/// Builds the two Dumer half-lists for weight `⌊p/2⌋` fragments: the left
/// half of the head feeds `L₁ = {(e₁, Q[e₁‖0])}`, the right half feeds
/// `L₂ = {(e₂, Q[0‖e₂] ⊕ s̄)}`. The left half takes the ceiling when `k+ℓ`
/// is odd.
pub fn build_half_lists(
    sf: &SystematicForm,
    p: usize,
    cap_bytes: u64,
) -> Result<(Vec<ListEntry>, Vec<ListEntry>), SolveError> {
    let head = sf.q_cols();
    let left = head.div_ceil(2);
    let right = head - left;
    let half_w = p / 2;
    let expected = binomial_u128(left as u64, half_w as u64)
        + binomial_u128(right as u64, half_w as u64);
    check_cap(expected, head, sf.parity_rows(), cap_bytes)?;
    let l1 = enumerate_fragments(sf, 0, left, half_w, None);
    let l2 = enumerate_fragments(sf, left, right, half_w, Some(&sf.sbar));
    Ok((l1, l2))
}

/// All pairs whose images agree on the `window_bits`-wide window starting at
/// `offset`, by sort-and-scan on the window key. Output entries carry the
/// XORed fragment and image.
#[must_use]
pub fn merge_on_window(
    l1: &[ListEntry],
    l2: &[ListEntry],
    window_bits: usize,
    offset: usize,
) -> Vec<ListEntry> {
    merge_on_window_target(l1, l2, window_bits, offset, 0)
}

/// Like [`merge_on_window`] but requiring `w₁ = w₂ ⊕ target` on the window,
/// i.e. the pair XOR hits `target` there.
#[must_use]
pub fn merge_on_window_target(
    l1: &[ListEntry],
    l2: &[ListEntry],
    window_bits: usize,
    offset: usize,
    target: u64,
) -> Vec<ListEntry> {
    assert!(window_bits <= 64, "window keys limited to 64 bits");
    let key = |e: &ListEntry| e.image.window_u64(offset, window_bits);

    let mut a: Vec<(u64, usize)> = l1.iter().enumerate().map(|(i, e)| (key(e), i)).collect();
    let mut b: Vec<(u64, usize)> = l2
        .iter()
        .enumerate()
        .map(|(i, e)| (key(e) ^ target, i))
        .collect();
    // Secondary sort on the fragment pins a deterministic output order.
    a.sort_unstable_by(|x, y| x.0.cmp(&y.0).then_with(|| l1[x.1].epart.cmp(&l1[y.1].epart)));
    b.sort_unstable_by(|x, y| x.0.cmp(&y.0).then_with(|| l2[x.1].epart.cmp(&l2[y.1].epart)));

    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let k = a[i].0;
                let i_end = (i..a.len()).take_while(|&x| a[x].0 == k).last().unwrap() + 1;
                let j_end = (j..b.len()).take_while(|&x| b[x].0 == k).last().unwrap() + 1;
                for x in i..i_end {
                    for y in j..j_end {
                        let e1 = &l1[a[x].1];
                        let e2 = &l2[b[y].1];
                        out.push(ListEntry {
                            epart: e1.epart.xor(&e2.epart),
                            image: e1.image.xor(&e2.image),
                        });
                    }
                }
                i = i_end;
                j = j_end;
            }
        }
    }
    out
}
