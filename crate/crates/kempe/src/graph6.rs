//! graph6 codec for undirected simple graphs of order at most 64.
//!
//! The format is the usual printable-ASCII encoding emitted by standard
//! graph generators: the order (one byte `n + 63` for n <= 62, or `~` plus
//! three bytes for larger n), followed by the upper-triangle adjacency bits
//! x(0,1), x(0,2), x(1,2), x(0,3), ... packed six per byte, each byte
//! offset by 63. Only this flavor is accepted; sparse6 and digraph6 inputs
//! are rejected with an input error.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const OFFSET: u8 = 63;
const LONG_FORM: u8 = 126; // '~'
const HEADER: &str = ">>graph6<<";

/// Decode one graph6 line (without its newline). A leading `>>graph6<<`
/// header, as written by some generators at the start of a stream, is
/// tolerated and skipped.
pub fn decode(line: &str) -> Result<Graph> {
    let text = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Input("empty graph6 line".into()));
    }
    match bytes[0] {
        b':' => {
            return Err(Error::Input(
                "sparse6 input is not supported (line starts with ':')".into(),
            ));
        }
        b';' => {
            return Err(Error::Input(
                "incremental sparse6 input is not supported (line starts with ';')".into(),
            ));
        }
        b'&' => {
            return Err(Error::Input(
                "digraph6 input is not supported (line starts with '&')".into(),
            ));
        }
        _ => {}
    }

    let (n, used) = decode_order(bytes)?;
    if n > MAX_VERTICES {
        return Err(Error::Input(format!(
            "graph order {n} exceeds the supported maximum of {MAX_VERTICES}"
        )));
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[used..];
    if body.len() != nbytes {
        return Err(Error::Input(format!(
            "graph6 line has {} data bytes, expected {} for order {}",
            body.len(),
            nbytes,
            n
        )));
    }

    for (i, &byte) in body.iter().enumerate() {
        if !(OFFSET..=126).contains(&byte) {
            return Err(Error::Input(format!(
                "graph6 byte {byte:#04x} out of range at data position {i}"
            )));
        }
    }

    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            if (body[bit / 6] - OFFSET) >> (5 - bit % 6) & 1 != 0 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    Ok(g)
}

fn decode_order(bytes: &[u8]) -> Result<(usize, usize)> {
    let first = bytes[0];
    if !(OFFSET..=126).contains(&first) {
        return Err(Error::Input(format!(
            "graph6 order byte {first:#04x} out of range"
        )));
    }
    if first != LONG_FORM {
        return Ok(((first - OFFSET) as usize, 1));
    }
    // Long form: '~' then three bytes of 6 bits each. A second '~' starts
    // the 36-bit form, whose minimum order already exceeds our cap.
    if bytes.len() >= 2 && bytes[1] == LONG_FORM {
        return Err(Error::Input(format!(
            "graph order exceeds the supported maximum of {MAX_VERTICES}"
        )));
    }
    if bytes.len() < 4 {
        return Err(Error::Input("truncated graph6 long-form order".into()));
    }
    let mut n = 0usize;
    for &b in &bytes[1..4] {
        if !(OFFSET..=126).contains(&b) {
            return Err(Error::Input(format!(
                "graph6 order byte {b:#04x} out of range"
            )));
        }
        n = n << 6 | (b - OFFSET) as usize;
    }
    Ok((n, 4))
}

/// Encode a graph as a canonical graph6 line (no trailing newline).
/// Orders up to 62 use the short form; 63 and 64 use the long form.
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(LONG_FORM);
        out.push((n >> 12 & 0x3f) as u8 + OFFSET);
        out.push((n >> 6 & 0x3f) as u8 + OFFSET);
        out.push((n & 0x3f) as u8 + OFFSET);
    }
    let mut acc = 0u8;
    let mut filled = 0u8;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}
