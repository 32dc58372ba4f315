//! graph6 encoding, as used by nauty and the standard graph corpora.
//!
//! A graph6 string is `N(n) R(x)`: the order header followed by the upper
//! triangle `x(0,1), x(0,2), x(1,2), x(0,3), ...` packed six bits per byte,
//! most significant bit first, every byte offset by 63. The last byte is
//! padded with zero bits.

use crate::error::Graph6Error;
use crate::graph::{pair_count, Graph};

const BIAS: u8 = 63;
const MAX_BYTE: u8 = 126;
const LONG_ORDER_MARK: u8 = 126;
const MAX_ORDER: u64 = (1 << 36) - 1;

/// Encodes `g` as graph6 (no trailing newline).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let pairs = pair_count(n);
    let mut out = Vec::with_capacity(8 + pairs.div_ceil(6));
    encode_order(n as u64, &mut out);

    let words = g.words();
    let mut k = 0;
    while k < pairs {
        let mut byte = 0u8;
        for offset in 0..6 {
            byte <<= 1;
            let idx = k + offset;
            if idx < pairs && words[idx / 64] >> (idx % 64) & 1 == 1 {
                byte |= 1;
            }
        }
        out.push(byte + BIAS);
        k += 6;
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn encode_order(n: u64, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(LONG_ORDER_MARK);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.push(LONG_ORDER_MARK);
        out.push(LONG_ORDER_MARK);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

/// Decodes one graph6 string. The input must not contain a line terminator.
pub fn parse_graph6(text: &[u8]) -> Result<Graph, Graph6Error> {
    if text.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &byte) in text.iter().enumerate() {
        if !(BIAS..=MAX_BYTE).contains(&byte) {
            return Err(Graph6Error::InvalidByte { offset, byte });
        }
    }

    let (n, header_len) = decode_order(text)?;
    if n == 0 {
        return Err(Graph6Error::ZeroOrder { offset: 0 });
    }
    if n > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge { n });
    }
    let n = usize::try_from(n).map_err(|_| Graph6Error::OrderTooLarge { n })?;
    let pairs = pair_count(n);
    let data_len = pairs.div_ceil(6);
    let expected = header_len + data_len;
    if text.len() < expected {
        return Err(Graph6Error::Truncated {
            offset: text.len(),
            expected,
        });
    }
    if text.len() > expected {
        return Err(Graph6Error::TrailingBytes { offset: expected });
    }

    let mut g = Graph::empty(n).map_err(|_| Graph6Error::ZeroOrder { offset: 0 })?;
    let data = &text[header_len..];
    let mut k = 0;
    let mut j = 1;
    let mut i = 0;
    for (pos, &raw) in data.iter().enumerate() {
        let value = raw - BIAS;
        for bit in (0..6).rev() {
            let set = value >> bit & 1 == 1;
            if k >= pairs {
                if set {
                    return Err(Graph6Error::NonzeroPadding {
                        offset: header_len + pos,
                    });
                }
                continue;
            }
            if set {
                g.set_edge(i, j, true);
            }
            k += 1;
            i += 1;
            if i == j {
                j += 1;
                i = 0;
            }
        }
    }
    Ok(g)
}

fn decode_order(text: &[u8]) -> Result<(u64, usize), Graph6Error> {
    let digits = |start: usize, count: usize| -> Result<u64, Graph6Error> {
        if text.len() < start + count {
            return Err(Graph6Error::Truncated {
                offset: text.len(),
                expected: start + count,
            });
        }
        Ok(text[start..start + count]
            .iter()
            .fold(0u64, |acc, &b| acc << 6 | u64::from(b - BIAS)))
    };
    if text[0] != LONG_ORDER_MARK {
        return Ok((u64::from(text[0] - BIAS), 1));
    }
    if text.len() > 1 && text[1] == LONG_ORDER_MARK {
        Ok((digits(2, 6)?, 8))
    } else {
        Ok((digits(1, 3)?, 4))
    }
}

/// Parses a multi-graph file: one graph6 string per line, each terminated by
/// a single `\n`. A final line without terminator is accepted. Errors carry
/// the 1-based line number.
pub fn parse_graph6_lines(text: &[u8]) -> Result<Vec<Graph>, (usize, Graph6Error)> {
    let mut body = text;
    if let Some(stripped) = body.strip_suffix(b"\n") {
        body = stripped;
    }
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(|&b| b == b'\n')
        .enumerate()
        .map(|(line, bytes)| parse_graph6(bytes).map_err(|e| (line + 1, e)))
        .collect()
}

/// One graph6 string per line, every line terminated by `\n`.
pub fn emit_graph6_lines<'a, I>(graphs: I) -> String
where
    I: IntoIterator<Item = &'a Graph>,
{
    let mut out = String::new();
    for g in graphs {
        out.push_str(&emit_graph6(g));
        out.push('\n');
    }
    out
}
