//! graph6 encoding of simple undirected graphs.
//!
//! A graph6 line is the vertex count followed by the upper triangle of the
//! adjacency matrix, column by column, packed six bits per printable byte
//! (value + 63).

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    Empty,
    BadByte(u8),
    Truncated,
    TrailingData,
}

impl fmt::Display for Graph6Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Graph6Error::Empty => f.write_str("empty graph6 line"),
            Graph6Error::BadByte(b) => write!(f, "byte {b:#x} is outside the graph6 range"),
            Graph6Error::Truncated => f.write_str("graph6 line is too short"),
            Graph6Error::TrailingData => f.write_str("graph6 line has trailing bytes"),
        }
    }
}

impl std::error::Error for Graph6Error {}

fn encode_n(n: usize, out: &mut Vec<u8>) {
    let sixes = |out: &mut Vec<u8>, count: u32| {
        for i in (0..count).rev() {
            out.push(((n >> (6 * i)) & 63) as u8 + 63);
        }
    };
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        sixes(out, 3);
    } else {
        out.extend([126, 126]);
        sixes(out, 6);
    }
}

/// Encodes a graph on vertices `0..n`; `edge(u, v)` is queried for `u < v`.
pub fn encode(n: usize, edge: impl Fn(usize, usize) -> bool) -> String {
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let (mut byte, mut filled) = (0u8, 0);
    for v in 1..n {
        for u in 0..v {
            byte = byte << 1 | edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(byte + 63);
                byte = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((byte << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decodes a graph6 line into the vertex count and the edges `(u, v)`,
/// `u < v`, on vertices `0..n`.
pub fn decode(line: &str) -> Result<(usize, Vec<(usize, usize)>), Graph6Error> {
    let bytes = line.trim_end().as_bytes();
    let mut data = Vec::with_capacity(bytes.len());
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte(b));
        }
        data.push(b - 63);
    }
    let (n, rest) = match data.as_slice() {
        [] => return Err(Graph6Error::Empty),
        [63, 63, rest @ ..] => (read_sixes(rest, 6)?, &rest[6..]),
        [63, rest @ ..] => (read_sixes(rest, 3)?, &rest[3..]),
        [n, rest @ ..] => (*n as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if rest.len() != bits.div_ceil(6) {
        return Err(if rest.len() < bits.div_ceil(6) {
            Graph6Error::Truncated
        } else {
            Graph6Error::TrailingData
        });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if rest[k / 6] >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Ok((n, edges))
}

fn read_sixes(data: &[u8], count: usize) -> Result<usize, Graph6Error> {
    if data.len() < count {
        return Err(Graph6Error::Truncated);
    }
    Ok(data[..count].iter().fold(0, |n, &b| n << 6 | b as usize))
}
