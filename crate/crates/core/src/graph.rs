//! Simple undirected graphs over bitset adjacency rows.

use std::fmt;

use crate::error::GraphError;

/// A set of vertices of a graph with `n` vertices, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(64).max(1)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_vertices(
        n: usize,
        vertices: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GraphError> {
        let mut s = Self::empty(n);
        for v in vertices {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Capacity (vertex count of the host graph).
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        assert!(
            v < self.n,
            "vertex {v} out of range for {} vertices",
            self.n
        );
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(&self.words)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Each vertex owns a fixed-width adjacency row of `ceil(n / 64)` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    adj: Vec<u64>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let stride = n.div_ceil(64).max(1);
        Graph {
            n,
            stride,
            adj: vec![0; n * stride],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Loops, parallel edges and out of
    /// range endpoints are rejected.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::ParallelEdge(u.min(v), u.max(v)));
        }
        self.adj[u * self.stride + v / 64] |= 1 << (v % 64);
        self.adj[v * self.stride + u / 64] |= 1 << (u % 64);
        self.m += 1;
        Ok(())
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete graph")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle graph")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path graph")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            .expect("complete bipartite graph")
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`,
    /// spokes `i -- i+5`.
    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        Self::from_edges(10, outer.chain(inner).chain(spokes)).expect("petersen graph")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.stride..(v + 1) * self.stride]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, sorted ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Adjacency rows as 128-bit masks. `None` when `n > 128`.
    pub fn masks128(&self) -> Option<Vec<u128>> {
        if self.n > 128 {
            return None;
        }
        Some(
            (0..self.n)
                .map(|v| {
                    let row = self.row(v);
                    let lo = row[0] as u128;
                    let hi = row.get(1).copied().unwrap_or(0) as u128;
                    lo | hi << 64
                })
                .collect(),
        )
    }

    /// Same graph with the edge `{u, v}` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u.min(v), u.max(v)));
        }
        let mut g = self.clone();
        g.adj[u * g.stride + v / 64] &= !(1 << (v % 64));
        g.adj[v * g.stride + u / 64] &= !(1 << (u % 64));
        g.m -= 1;
        Ok(g)
    }

    /// Same graph with the edge `{u, v}` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.insert_edge(u, v)?;
        Ok(g)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        Self::from_edges(
            self.n,
            self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])),
        )
        .expect("permutation of a simple graph")
    }

    /// Disjoint union, `other` relabeled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let off = self.n;
        Self::from_edges(
            self.n + other.n,
            self.edges()
                .into_iter()
                .chain(other.edges().into_iter().map(|(u, v)| (u + off, v + off))),
        )
        .expect("disjoint union")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Degree sequence plus the two derived flags used throughout the toolkit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub is_cubic: bool,
    pub degree2_vertices: VertexSet,
}

pub fn degree_profile(g: &Graph) -> DegreeProfile {
    let degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let is_cubic = degrees.iter().all(|&d| d == 3);
    let degree2_vertices =
        VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&v| degrees[v] == 2)).expect("in range");
    DegreeProfile {
        degrees,
        is_cubic,
        degree2_vertices,
    }
}

/// Connected components of `g - removed`, each in ascending vertex order.
pub fn components_excluding(g: &Graph, removed: &VertexSet) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] || removed.contains(s) {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for w in g.neighbors(u) {
                if !seen[w] && !removed.contains(w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || components_excluding(g, &VertexSet::empty(g.n())).len() == 1
}

/// Number of connected components of `g - d`; zero when every vertex is deleted.
pub fn components_after_deletion(g: &Graph, d: &VertexSet) -> usize {
    components_excluding(g, d).len()
}

pub fn is_bipartite(g: &Graph) -> bool {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    for s in 0..g.n() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let cu = color[u].unwrap();
            for w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        stack.push(w);
                    }
                    Some(cw) if cw == cu => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// `min(kappa(g), cap)` for vertex connectivity `kappa`, with disconnected
/// graphs at 0 and `K_n` at `n - 1`.
///
/// Separators of size below `cap` are found by exhaustive deletion, which is
/// exact and cheap for `cap <= 3`.
pub fn vertex_connectivity_capped(g: &Graph, cap: usize) -> usize {
    assert!((1..=3).contains(&cap), "cap must be 1, 2 or 3");
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    let mut removed = VertexSet::empty(n);
    let splits = |removed: &VertexSet| components_excluding(g, removed).len() >= 2;
    if splits(&removed) {
        return 0;
    }
    if cap >= 2 {
        for a in 0..n {
            removed.insert(a);
            let cut = splits(&removed);
            removed.remove(a);
            if cut {
                return 1;
            }
        }
    }
    if cap >= 3 {
        for a in 0..n {
            for b in a + 1..n {
                removed.insert(a);
                removed.insert(b);
                let cut = splits(&removed);
                removed.remove(a);
                removed.remove(b);
                if cut {
                    return 2;
                }
            }
        }
    }
    cap.min(n - 1)
}

/// Vertices whose removal increases the number of components.
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let base = components_after_deletion(g, &VertexSet::empty(n));
    let mut removed = VertexSet::empty(n);
    let mut out = Vec::new();
    for v in 0..n {
        removed.insert(v);
        // Deleting an isolated vertex lowers the count; that is not a cut.
        if components_after_deletion(g, &removed) > base {
            out.push(v);
        }
        removed.remove(v);
    }
    out
}

/// Subgraph induced by `x`, relabeled `0..|x|` in ascending order of the
/// original indices. The second value maps new indices to old ones.
pub fn induced_subgraph(g: &Graph, x: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
    if x.is_empty() {
        return Err(GraphError::EmptyVertexSet);
    }
    let map: Vec<usize> = x.iter().filter(|&v| v < g.n()).collect();
    let mut back = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        back[v] = i;
    }
    let mut h = Graph::empty(map.len());
    for (i, &v) in map.iter().enumerate() {
        for w in g.neighbors(v) {
            let j = back[w];
            if j != usize::MAX && j > i {
                h.insert_edge(i, j)?;
            }
        }
    }
    Ok((h, map))
}
