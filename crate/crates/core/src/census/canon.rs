//! Canonical certificates for small graphs (n <= 64) given as neighbor
//! masks: color refinement plus individualization, keeping the largest
//! relabeled adjacency matrix over all leaves of the search tree.

pub(crate) type Masks = Vec<u64>;

#[inline]
pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

fn class_count(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Refines `colors` until stable. New colors are ranks of
/// `(old color, sorted neighbor colors)`, so the order of old colors is kept
/// and the result does not depend on vertex names.
pub(crate) fn refine(adj: &[u64], colors: &mut [u32]) {
    let n = colors.len();
    let mut classes = class_count(colors);
    let mut keys: Vec<(u32, Vec<u32>, usize)> = Vec::with_capacity(n);
    loop {
        keys.clear();
        for v in 0..n {
            let mut nb: Vec<u32> = bits(adj[v]).map(|w| colors[w]).collect();
            nb.sort_unstable();
            keys.push((colors[v], nb, v));
        }
        keys.sort_unstable();
        let mut rank = 0u32;
        for i in 0..n {
            if i > 0 && (keys[i].0 != keys[i - 1].0 || keys[i].1 != keys[i - 1].1) {
                rank += 1;
            }
            colors[keys[i].2] = rank;
        }
        let now = rank as usize + 1;
        if n == 0 || now == classes {
            return;
        }
        classes = now;
    }
}

struct Search<'a> {
    adj: &'a [u64],
    best: Option<Masks>,
}

impl Search<'_> {
    fn leaf(&mut self, colors: &[u32]) {
        let n = colors.len();
        let mut inv = vec![0; n];
        for v in 0..n {
            inv[colors[v] as usize] = v;
        }
        let cert: Masks = (0..n)
            .map(|i| bits(self.adj[inv[i]]).fold(0u64, |acc, w| acc | 1 << colors[w]))
            .collect();
        if self.best.as_ref().is_none_or(|b| cert > *b) {
            self.best = Some(cert);
        }
    }

    fn run(&mut self, mut colors: Vec<u32>) {
        refine(self.adj, &mut colors);
        let n = colors.len();
        let mut size = vec![0usize; n];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let target = (0..n)
            .filter(|&c| size[c] > 1)
            .min_by_key(|&c| (size[c], c));
        let Some(cell) = target else {
            self.leaf(&colors);
            return;
        };
        for v in (0..n).filter(|&v| colors[v] as usize == cell) {
            let next: Vec<u32> = (0..n)
                .map(|w| {
                    let c = colors[w] * 2;
                    if w == v {
                        c
                    } else {
                        c + 1
                    }
                })
                .collect();
            self.run(next);
        }
    }
}

/// Certificate of the graph with an initial vertex coloring; equal
/// certificates (for colorings with equal class sizes) mean an isomorphism
/// preserving the colors exists.
pub(crate) fn certificate(adj: &[u64], colors: Vec<u32>) -> Masks {
    let mut s = Search { adj, best: None };
    s.run(colors);
    s.best.unwrap_or_default()
}

/// Certificate with the vertices of `marked` placed first.
pub(crate) fn marked_certificate(adj: &[u64], marked: u64) -> Masks {
    let colors = (0..adj.len())
        .map(|v| if marked >> v & 1 == 1 { 0 } else { 1 })
        .collect();
    certificate(adj, colors)
}

/// Isomorphism-invariant vertex colors: triangles, 4-cycles and ball sizes,
/// refined.
pub(crate) fn invariant_colors(adj: &[u64]) -> Vec<u32> {
    let n = adj.len();
    let mut base: Vec<(u32, u32, u32, u32, u32, usize)> = (0..n)
        .map(|v| {
            let nv = adj[v];
            let tri: u32 = bits(nv).map(|w| (adj[w] & nv).count_ones()).sum::<u32>() / 2;
            let c4: u32 = (0..n)
                .filter(|&w| w != v)
                .map(|w| {
                    let c = (adj[w] & nv).count_ones();
                    c * c.saturating_sub(1) / 2
                })
                .sum();
            let mut ball = nv | 1 << v;
            let mut sizes = [0u32; 2];
            for s in sizes.iter_mut() {
                ball = bits(ball).fold(ball, |acc, w| acc | adj[w]);
                *s = ball.count_ones();
            }
            (nv.count_ones(), tri, c4, sizes[0], sizes[1], v)
        })
        .collect();
    base.sort_unstable();
    let mut colors = vec![0u32; n];
    let mut rank = 0;
    for i in 0..n {
        let key = |b: &(u32, u32, u32, u32, u32, usize)| (b.0, b.1, b.2, b.3, b.4);
        if i > 0 && key(&base[i]) != key(&base[i - 1]) {
            rank += 1;
        }
        colors[base[i].5] = rank;
    }
    refine(adj, &mut colors);
    colors
}

#[cfg(test)]
pub(crate) fn masks_of(g: &crate::graph::Graph) -> Masks {
    assert!(g.n() <= 64, "canonical forms support at most 64 vertices");
    (0..g.n())
        .map(|v| g.neighbors(v).fold(0u64, |acc, w| acc | 1 << w))
        .collect()
}

pub(crate) fn graph_of(adj: &[u64]) -> crate::graph::Graph {
    let edges =
        (0..adj.len()).flat_map(|v| bits(adj[v]).filter(move |&w| w > v).map(move |w| (v, w)));
    crate::graph::Graph::from_edges(adj.len(), edges).expect("masks describe a simple graph")
}

pub(crate) fn is_connected(adj: &[u64], within: u64) -> bool {
    if within == 0 {
        return true;
    }
    let mut seen = within & within.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let next = bits(frontier).fold(0, |acc, w| acc | adj[w]) & within & !seen;
        seen |= next;
        frontier = next;
    }
    seen == within
}
