//! graph6 (read/write) and sparse6 (read) text encodings.
//!
//! Vertex order is preserved exactly; nothing here canonicalizes.

use thiserror::Error;

use super::{Graph, GraphError};

const GRAPH6_HEADER: &str = ">>graph6<<";
const SPARSE6_HEADER: &str = ">>sparse6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("malformed length prefix")]
    BadLength,
    #[error("expected {expected} data bytes, found {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("nonzero padding bits")]
    NonzeroPadding,
    #[error("sparse6 input must start with ':'")]
    NotSparse6,
    #[error("{0}")]
    Graph(#[from] GraphError),
}

fn check_printable(bytes: &[u8], base: usize) -> Result<(), Graph6Error> {
    match bytes.iter().position(|b| !(63..=126).contains(b)) {
        Some(i) => Err(Graph6Error::BadByte {
            offset: base + i,
            byte: bytes[i],
        }),
        None => Ok(()),
    }
}

/// Decodes the N(n) size prefix; returns `(n, bytes consumed)`.
fn decode_size(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let six = |s: &[u8]| {
        s.iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
    };
    match bytes {
        [] => Err(Graph6Error::Empty),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Graph6Error::BadLength);
            }
            let n = six(&rest[..6]);
            if n <= 258_047 {
                return Err(Graph6Error::BadLength);
            }
            Ok((n, 8))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Graph6Error::BadLength);
            }
            let n = six(&rest[..3]);
            if n <= 62 {
                return Err(Graph6Error::BadLength);
            }
            Ok((n, 4))
        }
        [b, ..] => Ok(((*b - 63) as usize, 1)),
    }
}

fn encode_size(n: usize, out: &mut String) {
    let push6 = |out: &mut String, v: usize, groups: u32| {
        for k in (0..groups).rev() {
            out.push(char::from(((v >> (6 * k)) & 0x3f) as u8 + 63));
        }
    };
    if n <= 62 {
        out.push(char::from(n as u8 + 63));
    } else if n <= 258_047 {
        out.push('~');
        push6(out, n, 3);
    } else {
        out.push_str("~~");
        push6(out, n, 6);
    }
}

fn strip_line(text: &str) -> &str {
    text.trim_end_matches(['\n', '\r'])
}

/// Parses one graph6 line, with or without the `>>graph6<<` header.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let line = strip_line(text);
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    check_printable(bytes, 0)?;
    let (n, used) = decode_size(bytes)?;
    let data = &bytes[used..];
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if data.len() != expected {
        return Err(Graph6Error::WrongSize {
            expected,
            found: data.len(),
        });
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        if (data[expected - 1] - 63) & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Encodes `g` as a graph6 line (no header, no newline).
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.row(j);
        for i in 0..j {
            acc = (acc << 1) | row.contains(i) as u8;
            filled += 1;
            if filled == 6 {
                out.push(char::from(acc + 63));
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(char::from((acc << (6 - filled)) + 63));
    }
    out
}

/// Parses one sparse6 line (leading `:`), with or without header.
///
/// Multi-edges collapse; self-loops are rejected because graphs are simple.
pub fn parse_sparse6(text: &str) -> Result<Graph, Graph6Error> {
    let line = strip_line(text);
    let line = line.strip_prefix(SPARSE6_HEADER).unwrap_or(line);
    let body = line.strip_prefix(':').ok_or(if line.is_empty() {
        Graph6Error::Empty
    } else {
        Graph6Error::NotSparse6
    })?;
    let bytes = body.as_bytes();
    check_printable(bytes, 1)?;
    let (n, used) = decode_size(bytes)?;
    let data = &bytes[used..];

    // bits needed to write n - 1
    let mut k = 0;
    while k < usize::BITS && (n.saturating_sub(1) >> k) > 0 {
        k += 1;
    }
    let total_bits = data.len() * 6;
    let bit = |pos: usize| (data[pos / 6] - 63) >> (5 - pos % 6) & 1;

    let mut edges = Vec::new();
    let mut pos = 0;
    let mut v = 0usize;
    while pos + 1 + k as usize <= total_bits {
        let b = bit(pos);
        pos += 1;
        let mut x = 0usize;
        for _ in 0..k {
            x = (x << 1) | bit(pos) as usize;
            pos += 1;
        }
        if b == 1 {
            v += 1;
        }
        // trailing one-bits of padding push v or x past n
        if x >= n || v >= n {
            break;
        }
        if x > v {
            v = x;
        } else {
            edges.push((x, v));
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Parses a graph6 or sparse6 line, dispatching on the leading `:`.
pub fn parse_graph_line(text: &str) -> Result<Graph, Graph6Error> {
    let line = strip_line(text).trim();
    if line.starts_with(':') || line.starts_with(SPARSE6_HEADER) {
        parse_sparse6(line)
    } else {
        parse_graph6(line)
    }
}
