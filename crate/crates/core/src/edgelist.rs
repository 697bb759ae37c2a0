//! Plain-text adjacency format used for the shipped gadgets and reference
//! graphs: a header line `n m`, then one `u v` pair per line with `u < v`,
//! in ascending order. Lines starting with `#` are ignored.

use crate::error::DataError;
use crate::graph::Graph;

pub fn parse_edge_list(text: &str, source: &str) -> Result<Graph, DataError> {
    let bad = |line: usize, reason: String| DataError::Malformed {
        path: source.to_string(),
        reason: format!("line {line}: {reason}"),
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let pair = |line: usize, l: &str| -> Result<(usize, usize), DataError> {
        let nums: Vec<&str> = l.split_whitespace().collect();
        match nums[..] {
            [a, b] => match (a.parse(), b.parse()) {
                (Ok(a), Ok(b)) => Ok((a, b)),
                _ => Err(bad(line, format!("expected two integers, found {l:?}"))),
            },
            _ => Err(bad(line, format!("expected two integers, found {l:?}"))),
        }
    };
    let (hl, header) = lines
        .next()
        .ok_or_else(|| bad(1, "missing header".into()))?;
    let (n, m) = pair(hl, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        edges.push(pair(line, l)?);
    }
    if edges.len() != m {
        return Err(bad(
            hl,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
