//! graph6 encoding.
//!
//! `N(n)` is one byte `n + 63` for `n < 63` and `126` followed by three
//! 6-bit groups for `63 <= n < 258048`. The payload is the upper triangle
//! read column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), six bits per
//! byte, most significant first, zero padded, each byte offset by 63.

use super::{Graph, GraphError};
use thiserror::Error;

const HEADER: &[u8] = b">>graph6<<";

/// Largest order representable without the 8-byte size prefix.
pub const MAX_GRAPH6_ORDER: usize = 258_047;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("byte {byte:#04x} at offset {offset} is outside 63..=126")]
    InvalidChar { offset: usize, byte: u8 },
    #[error("truncated input: expected {expected} payload bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{extra} unexpected bytes after the payload")]
    TrailingGarbage { extra: usize },
    #[error("orders of {MAX_GRAPH6_ORDER} or more are not supported")]
    TooLarge,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Decodes the order and the upper-triangle bit string of a graph6 line.
///
/// `bit(i, j)` for `i < j` is at index `j*(j-1)/2 + i` of the returned vector.
pub(crate) fn decode(text: &[u8]) -> Result<(usize, Vec<bool>), Graph6Error> {
    let base = if text.starts_with(HEADER) { HEADER.len() } else { 0 };
    let mut body = &text[base..];
    while let [rest @ .., b'\n' | b'\r'] = body {
        body = rest;
    }
    for (i, &byte) in body.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::InvalidChar { offset: base + i, byte });
        }
    }
    let (n, payload) = match body {
        [] => return Err(Graph6Error::Truncated { expected: 1, found: 0 }),
        [126, 126, ..] => return Err(Graph6Error::TooLarge),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Graph6Error::Truncated { expected: 3, found: rest.len() });
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if payload.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: payload.len() });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingGarbage { extra: payload.len() - expected });
    }
    let bits = (0..nbits)
        .map(|k| (payload[k / 6] - 63) >> (5 - k % 6) & 1 == 1)
        .collect();
    Ok((n, bits))
}

pub(crate) fn encode(n: usize, mut bit: impl FnMut(usize, usize) -> bool) -> String {
    assert!(n <= MAX_GRAPH6_ORDER, "graph6 order {n} too large");
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | bit(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses one graph6 line. A `>>graph6<<` header and trailing line ending are
/// accepted.
pub fn parse_graph6(text: &[u8]) -> Result<Graph, Graph6Error> {
    let (n, bits) = decode(text)?;
    let mut k = 0;
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Encodes a graph without header or newline.
pub fn write_graph6(g: &Graph) -> String {
    encode(g.order(), |i, j| g.adjacent(i, j))
}
