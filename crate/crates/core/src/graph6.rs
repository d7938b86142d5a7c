//! graph6 encoding (short form, up to 62 vertices).
//!
//! Format reference: <https://users.cecs.anu.edu.au/~bdm/data/formats.txt>.
//! The upper triangle is read column by column, `x(0,1) x(0,2) x(1,2) x(0,3) ...`,
//! six bits per byte, each byte offset by 63. Unused trailing bits must be zero.

use crate::error::{Error, Result};
use crate::graph::{bit, Graph};

pub const HEADER: &str = ">>graph6<<";
pub const MAX_SHORT_ORDER: usize = 62;

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();

    let Some(&first) = bytes.first() else {
        return Err(Error::Parse {
            offset: 0,
            message: "empty graph6 string".into(),
        });
    };
    if first == 126 {
        return Err(Error::Parse {
            offset: 0,
            message: "long-form graph6 (n > 62) is not supported".into(),
        });
    }
    let n = sextet(first, 0)? as usize;

    let bits = n * n.saturating_sub(1) / 2;
    let body_len = bits.div_ceil(6);
    let body = &bytes[1..];
    if body.len() < body_len {
        return Err(Error::Parse {
            offset: bytes.len(),
            message: format!(
                "truncated: {n} vertices need {body_len} data bytes, found {}",
                body.len()
            ),
        });
    }
    if body.len() > body_len {
        return Err(Error::Parse {
            offset: 1 + body_len,
            message: "trailing bytes after graph data".into(),
        });
    }

    let mut adj = vec![0u64; n];
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = sextet(body[k / 6], 1 + k / 6)?;
            if byte >> (5 - k % 6) & 1 == 1 {
                adj[u] |= bit(v);
                adj[v] |= bit(u);
            }
            k += 1;
        }
    }
    if !bits.is_multiple_of(6) {
        let last = body_len - 1;
        let pad = 6 - bits % 6;
        if sextet(body[last], 1 + last)? & ((1 << pad) - 1) != 0 {
            return Err(Error::Parse {
                offset: 1 + last,
                message: "nonzero padding bits".into(),
            });
        }
    }
    Graph::from_adjacency_masks(adj)
}

fn sextet(b: u8, offset: usize) -> Result<u8> {
    if (63..=126).contains(&b) {
        Ok(b - 63)
    } else {
        Err(Error::Parse {
            offset,
            message: format!("byte 0x{b:02x} outside the graph6 range 63..=126"),
        })
    }
}

pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_SHORT_ORDER {
        return Err(Error::UnsupportedSize(format!(
            "graph6 short form holds at most {MAX_SHORT_ORDER} vertices, got {n}"
        )));
    }
    let mut out = String::with_capacity(1 + (n * n) / 12 + 1);
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push((acc + 63) as char);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        acc <<= 6 - k % 6;
        out.push((acc + 63) as char);
    }
    Ok(out)
}

/// One parsed line of a graph6 stream.
#[derive(Debug, Clone)]
pub struct Graph6Line {
    /// 1-based line number in the source.
    pub line: usize,
    pub graph: Result<Graph>,
}

/// Parses every non-blank line of a graph6 document. A leading `>>graph6<<`
/// header is skipped.
pub fn parse_graph6_lines(text: &str) -> Vec<Graph6Line> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| Graph6Line {
            line: i + 1,
            graph: parse_graph6(l.trim_end()),
        })
        .collect()
}
