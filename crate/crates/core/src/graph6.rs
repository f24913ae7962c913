//! graph6 encoding.
//!
//! The order is written as one byte `63 + n` when `n <= 62`, otherwise as `~`
//! followed by three 6-bit groups. The upper triangle follows column by
//! column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), six bits per byte, each
//! byte offset by 63, and the final byte zero padded.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, MAX_ORDER};

const OPTIONAL_HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.row(j);
        for i in 0..j {
            acc = (acc << 1) | (row & bit(i) != 0) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    // every byte lies in 63..=126
    String::from_utf8(out).expect("graph6 output is ASCII")
}

pub fn decode(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(OPTIONAL_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let malformed = |why: &str| Error::MalformedGraph6(format!("{why} in {s:?}"));

    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(malformed(&format!("byte {b} outside 63..=126")));
    }
    let (n, body) = match bytes.first() {
        None => return Err(malformed("empty string")),
        Some(126) => {
            if bytes.get(1) == Some(&126) {
                return Err(Error::OrderTooLarge(1 << 18));
            }
            if bytes.len() < 4 {
                return Err(malformed("truncated order field"));
            }
            let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &bytes[4..])
        }
        Some(&b) => ((b - 63) as usize, &bytes[1..]),
    };
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    if body.len() != nbits.div_ceil(6) {
        return Err(malformed(&format!(
            "expected {} data bytes for order {n}, found {}",
            nbits.div_ceil(6),
            body.len()
        )));
    }

    let mut rows = alloc::vec![0u128; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (0x20 >> (k % 6)) != 0 {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[body.len() - 1] - 63;
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(malformed("nonzero padding bits"));
        }
    }
    Graph::from_rows(rows)
}
