//! graph6 encoding: a size prefix followed by the upper triangle of the
//! adjacency matrix, column by column, packed into printable 6-bit chunks.

use crate::error::Graph6Error;
use crate::graph::Graph;

pub const HEADER: &str = ">>graph6<<";
/// Largest order expressible with the 4-byte size prefix.
pub const MAX_ORDER: usize = 258_047;

fn err(offset: usize, reason: impl Into<String>) -> Graph6Error {
    Graph6Error {
        offset,
        reason: reason.into(),
    }
}

/// Parses a single graph6 line. A leading `>>graph6<<` header and trailing
/// line terminators are accepted.
pub fn parse_graph6(text: &[u8]) -> Result<Graph, Graph6Error> {
    let mut start = 0;
    if text.starts_with(HEADER.as_bytes()) {
        start = HEADER.len();
    }
    let mut end = text.len();
    while end > start && matches!(text[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let body = &text[start..end];
    let at = |i: usize| start + i;

    for (i, &c) in body.iter().enumerate() {
        if !(63..=126).contains(&c) {
            return Err(err(
                at(i),
                format!("character 0x{c:02x} outside the graph6 range"),
            ));
        }
    }
    let first = *body.first().ok_or_else(|| err(at(0), "empty input"))?;
    let (n, prefix) = if first < 126 {
        ((first - 63) as usize, 1)
    } else {
        if body.len() < 4 {
            return Err(err(at(body.len()), "truncated size prefix"));
        }
        if body[1] == 126 {
            return Err(err(at(1), "8-byte size prefix is not supported"));
        }
        let n = body[1..4]
            .iter()
            .fold(0usize, |acc, &c| acc << 6 | (c - 63) as usize);
        if n < 63 {
            return Err(err(
                at(1),
                format!("order {n} must use the short size prefix"),
            ));
        }
        (n, 4)
    };

    let bits = n * n.saturating_sub(1) / 2;
    let want = bits.div_ceil(6);
    let data = &body[prefix..];
    if data.len() != want {
        return Err(err(
            at(prefix + data.len().min(want)),
            format!(
                "expected {want} data bytes for order {n}, found {}",
                data.len()
            ),
        ));
    }
    if let Some(&last) = data.last() {
        let pad = want * 6 - bits;
        if (last - 63) & ((1u8 << pad) - 1) != 0 {
            return Err(err(at(prefix + want - 1), "nonzero padding bits"));
        }
    }

    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(i, j)
                    .expect("upper triangle entries are distinct");
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Canonical minimal-length graph6 encoding, without header or newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= MAX_ORDER, "graph6 8-byte size prefix is not supported");
    let mut out = Vec::with_capacity(4 + n * n / 12 + 1);
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + 63));
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// One graph6 record from a line-oriented stream.
#[derive(Debug, Clone)]
pub struct Graph6Line {
    /// 1-based line number in the source.
    pub line: usize,
    pub text: String,
}

/// Splits a graph6 stream into records, dropping blank lines and a header
/// (either on its own line or prefixed to the first record).
pub fn split_stream(input: &str) -> Vec<Graph6Line> {
    input
        .lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.trim_end_matches('\r');
            let l = l.strip_prefix(HEADER).unwrap_or(l);
            (!l.trim().is_empty()).then(|| Graph6Line {
                line: i + 1,
                text: l.to_string(),
            })
        })
        .collect()
}
