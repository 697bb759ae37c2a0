//! Isomorphism testing by joint color refinement and individualization.

use std::collections::BTreeMap;

use crate::graph::Graph;

type Colors = Vec<u32>;

/// Refines both colorings in lockstep until stable. Colors are renamed by
/// the rank of their signature, so matching vertices keep matching names.
/// Returns `None` when the color histograms of the two graphs diverge.
fn refine(g1: &Graph, g2: &Graph, mut c1: Colors, mut c2: Colors) -> Option<(Colors, Colors)> {
    let mut classes = count_classes(&c1);
    loop {
        let sig = |g: &Graph, c: &Colors, v: usize| {
            let mut nb: Vec<u32> = g.neighbors(v).map(|w| c[w]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let s1: Vec<_> = (0..g1.n()).map(|v| sig(g1, &c1, v)).collect();
        let s2: Vec<_> = (0..g2.n()).map(|v| sig(g2, &c2, v)).collect();
        let mut ids: BTreeMap<&(u32, Vec<u32>), [usize; 2]> = BTreeMap::new();
        for s in &s1 {
            ids.entry(s).or_default()[0] += 1;
        }
        for s in &s2 {
            ids.entry(s).or_default()[1] += 1;
        }
        if ids.values().any(|[a, b]| a != b) {
            return None;
        }
        let rank: BTreeMap<&(u32, Vec<u32>), u32> = ids
            .keys()
            .enumerate()
            .map(|(i, &k)| (k, i as u32))
            .collect();
        c1 = s1.iter().map(|s| rank[s]).collect();
        c2 = s2.iter().map(|s| rank[s]).collect();
        let now = rank.len();
        if now == classes {
            return Some((c1, c2));
        }
        classes = now;
    }
}

fn count_classes(c: &Colors) -> usize {
    let mut v = c.clone();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn search(g1: &Graph, g2: &Graph, c1: Colors, c2: Colors) -> bool {
    let n = g1.n();
    let mut size: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in &c1 {
        *size.entry(c).or_default() += 1;
    }
    // Smallest non-singleton cell, lowest color on ties.
    let target = size
        .iter()
        .filter(|(_, &s)| s > 1)
        .min_by_key(|(&c, &s)| (s, c))
        .map(|(&c, _)| c);
    let Some(color) = target else {
        let mut image = vec![0; n];
        let mut by_color = vec![0; n];
        for v in 0..n {
            by_color[c2[v] as usize] = v;
        }
        for v in 0..n {
            image[v] = by_color[c1[v] as usize];
        }
        return g1
            .edges()
            .into_iter()
            .all(|(u, v)| g2.has_edge(image[u], image[v]));
    };
    let v = (0..n).find(|&v| c1[v] == color).unwrap();
    let fresh = n as u32;
    for w in (0..n).filter(|&w| c2[w] == color) {
        let mut d1 = c1.clone();
        let mut d2 = c2.clone();
        d1[v] = fresh;
        d2[w] = fresh;
        if let Some((r1, r2)) = refine(g1, g2, d1, d2) {
            if search(g1, g2, r1, r2) {
                return true;
            }
        }
    }
    false
}

/// True iff an adjacency-preserving bijection between the vertex sets exists.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    if g1.n() != g2.n() || g1.m() != g2.m() {
        return false;
    }
    let mut d1: Vec<usize> = (0..g1.n()).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (0..g2.n()).map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return false;
    }
    let start = |g: &Graph| (0..g.n()).map(|v| g.degree(v) as u32).collect::<Colors>();
    match refine(g1, g2, start(g1), start(g2)) {
        Some((c1, c2)) => search(g1, g2, c1, c2),
        None => false,
    }
}
