//! Plain-text instance format, chosen over binary for diffability:
//!
//! ```text
//! isd v1 <n> <k> <w>
//! <n-k lines: hex-encoded parity rows>
//! <hex syndrome>
//! [<hex planted error>]
//! ```
//!
//! Hex encoding is little-endian within nibbles: bit `j` of a vector lives
//! in hex character `j / 4`, at value weight `2^(j % 4)`. A length-`m`
//! vector takes exactly `ceil(m / 4)` lowercase hex characters. Parsing
//! followed by serialization reproduces the file byte for byte.

use gf2_core::{BitMatrix, BitVector};
use instance_lab::IsdInstance;

/// Serializes a vector as lowercase hex, LSB-first within each nibble.
#[must_use]
pub fn vector_to_hex(v: &BitVector) -> String {
    let chars = v.len().div_ceil(4);
    let mut out = String::with_capacity(chars);
    for c in 0..chars {
        let mut nibble = 0u8;
        for b in 0..4 {
            let j = 4 * c + b;
            if j < v.len() && v.get(j) {
                nibble |= 1 << b;
            }
        }
        out.push(char::from_digit(u32::from(nibble), 16).unwrap());
    }
    out
}

/// Parses a hex line back into a vector of the stated bit length.
pub fn vector_from_hex(s: &str, len: usize) -> Result<BitVector, String> {
    let expect = len.div_ceil(4);
    if s.len() != expect {
        return Err(format!(
            "expected {expect} hex chars for {len} bits, got {}",
            s.len()
        ));
    }
    let mut v = BitVector::zeros(len);
    for (c, ch) in s.chars().enumerate() {
        let nibble = ch
            .to_digit(16)
            .filter(|_| !ch.is_uppercase())
            .ok_or_else(|| format!("bad hex character {ch:?}"))? as u8;
        for b in 0..4 {
            let j = 4 * c + b;
            if (nibble >> b) & 1 == 1 {
                if j >= len {
                    return Err("set bit beyond vector length".into());
                }
                v.set(j, true);
            }
        }
    }
    Ok(v)
}

#[must_use]
pub fn serialize(inst: &IsdInstance) -> String {
    let mut out = format!("isd v1 {} {} {}\n", inst.n, inst.k, inst.w);
    for r in 0..inst.n - inst.k {
        out.push_str(&vector_to_hex(inst.h.row(r)));
        out.push('\n');
    }
    out.push_str(&vector_to_hex(&inst.s));
    out.push('\n');
    if let Some(e) = &inst.planted {
        out.push_str(&vector_to_hex(e));
        out.push('\n');
    }
    out
}

pub fn parse(text: &str) -> Result<IsdInstance, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty file")?;
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 5 || fields[0] != "isd" || fields[1] != "v1" {
        return Err(format!("bad header {header:?}"));
    }
    let parse_num = |s: &str| s.parse::<usize>().map_err(|e| format!("bad header number: {e}"));
    let n = parse_num(fields[2])?;
    let k = parse_num(fields[3])?;
    let w = parse_num(fields[4])?;
    if k == 0 || k >= n {
        return Err(format!("invalid sizes n={n}, k={k}"));
    }
    let mut rows = Vec::with_capacity(n - k);
    for i in 0..n - k {
        let line = lines.next().ok_or_else(|| format!("missing row {i}"))?;
        rows.push(vector_from_hex(line, n).map_err(|e| format!("row {i}: {e}"))?);
    }
    let s_line = lines.next().ok_or("missing syndrome")?;
    let s = vector_from_hex(s_line, n - k).map_err(|e| format!("syndrome: {e}"))?;
    let planted = match lines.next() {
        None | Some("") => None,
        Some(line) => Some(vector_from_hex(line, n).map_err(|e| format!("planted: {e}"))?),
    };
    if let Some(extra) = lines.next() {
        if !extra.is_empty() {
            return Err("trailing content after instance".into());
        }
    }
    let inst = IsdInstance {
        n,
        k,
        w,
        h: BitMatrix::from_rows(rows),
        s,
        planted,
    };
    if let Some(e) = &inst.planted {
        if e.weight() != inst.w || inst.h.mul_vec(e) != inst.s {
            return Err("planted error does not match header/syndrome".into());
        }
    }
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use instance_lab::generate_instance;
    use proptest::prelude::*;

    #[test]
    fn header_shape_for_24_12() {
        let inst = generate_instance(24, 12, 1);
        let text = serialize(&inst);
        assert!(text.starts_with("isd v1 24 12 3\n"));
    }

    #[test]
    fn roundtrip_is_identity_on_bytes() {
        for seed in 0..10 {
            let inst = generate_instance(30, 13, seed);
            let text = serialize(&inst);
            let parsed = parse(&text).unwrap();
            assert_eq!(serialize(&parsed), text);
        }
    }

    #[test]
    fn roundtrip_without_planted() {
        let mut inst = generate_instance(20, 9, 3);
        inst.planted = None;
        let text = serialize(&inst);
        let parsed = parse(&text).unwrap();
        assert!(parsed.planted.is_none());
        assert_eq!(serialize(&parsed), text);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse("").is_err());
        assert!(parse("isd v2 8 4 1\n").is_err());
        assert!(parse("isd v1 8 9 1\n").is_err());
        let inst = generate_instance(16, 8, 4);
        let text = serialize(&inst);
        // Corrupt one hex digit of the syndrome line: planted check must fail.
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let syn = lines[1 + 8].clone();
        let flipped = if syn.starts_with('0') { "1" } else { "0" };
        lines[1 + 8] = format!("{}{}", flipped, &syn[1..]);
        assert!(parse(&lines.join("\n")).is_err());
    }

    proptest! {
        #[test]
        fn hex_roundtrip(len in 1usize..100, seed in 0u64..500) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let v = BitVector::random(len, &mut rng);
            let hex = vector_to_hex(&v);
            prop_assert_eq!(vector_from_hex(&hex, len).unwrap(), v);
        }
    }
}
