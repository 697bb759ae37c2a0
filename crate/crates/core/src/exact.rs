//! Exact minimum leaf number and path covering number, plus the spanning
//! tree counting and enumeration used to cross-check them.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::error::SearchError;
use crate::graph::{components_after_deletion, is_connected, Graph, VertexSet};
use crate::hamsearch::{self, reach, PathWitness, Pruning, SearchBudget, Verdict};

/// Spanning tree stored as a parent array; the root has no parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanningTree {
    pub parent: Vec<Option<usize>>,
    pub leaf_count: usize,
}

impl SpanningTree {
    /// Builds the tree from `n - 1` edges, rooted at vertex 0.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Option<Self> {
        if n == 0 || edges.len() != n - 1 {
            return None;
        }
        let mut nb = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return None;
            }
            nb[u].push(v);
            nb[v].push(u);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &nb[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    count += 1;
                    stack.push(w);
                }
            }
        }
        if count != n {
            return None;
        }
        let leaf_count = nb.iter().filter(|l| l.len() == 1).count();
        Some(SpanningTree { parent, leaf_count })
    }

    /// Tree along a path.
    pub fn from_path(n: usize, path: &[usize]) -> Option<Self> {
        let edges: Vec<_> = path.windows(2).map(|w| (w[0], w[1])).collect();
        Self::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p.min(v), p.max(v))))
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n()];
        for (u, v) in self.edges() {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 1)
            .map(|(v, _)| v)
            .collect()
    }

    /// Every tree edge is a host edge, the tree spans `g`, and the stored
    /// leaf count is right.
    pub fn is_spanning_tree_of(&self, g: &Graph) -> bool {
        if self.n() != g.n() {
            return false;
        }
        let edges = self.edges();
        if !edges.iter().all(|&(u, v)| g.has_edge(u, v)) {
            return false;
        }
        match Self::from_edges(g.n(), &edges) {
            Some(t) => t.leaf_count == self.leaf_count,
            None => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MlResult {
    pub ml: usize,
    pub witness: SpanningTree,
    /// Search-tree nodes expanded over all decision probes.
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuResult {
    pub mu: usize,
    pub cover: Vec<PathWitness>,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph needs at least {0} vertices")]
    TooSmall(usize),
    #[error("node budget exhausted; value lies in [{lower}, {upper}]")]
    Indeterminate {
        lower: usize,
        upper: usize,
        /// Best witness found: a spanning tree or a path cover.
        tree: Option<SpanningTree>,
        cover: Option<Vec<PathWitness>>,
    },
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// Number of spanning trees via fraction-free elimination of a Laplacian
/// minor. Disconnected graphs give 0, the one-vertex graph gives 1.
pub fn count_spanning_trees_kirchhoff(g: &Graph) -> BigInt {
    let n = g.n();
    if n <= 1 {
        return BigInt::from(n);
    }
    let size = n - 1;
    let mut a: Vec<Vec<BigInt>> = (1..n)
        .map(|i| {
            (1..n)
                .map(|j| {
                    if i == j {
                        BigInt::from(g.degree(i))
                    } else if g.has_edge(i, j) {
                        BigInt::from(-1)
                    } else {
                        BigInt::from(0)
                    }
                })
                .collect()
        })
        .collect();
    let zero = BigInt::from(0);
    let mut prev = BigInt::from(1);
    let mut negate = false;
    for k in 0..size {
        if a[k][k] == zero {
            match (k + 1..size).find(|&r| a[r][k] != zero) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return zero,
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub count: u64,
    pub min_leaves: Option<usize>,
    pub aborted: bool,
}

/// Visits every spanning tree of `g` exactly once by reverse search over
/// single edge exchanges, rooted at the greedy tree on the lowest-index
/// edges. The visitor may stop the walk with `ControlFlow::Break`.
pub fn enumerate_spanning_trees<F>(g: &Graph, mut visitor: F) -> EnumerationSummary
where
    F: FnMut(&SpanningTree) -> ControlFlow<()>,
{
    let n = g.n();
    let edges = g.edges();
    let mut summary = EnumerationSummary {
        count: 0,
        min_leaves: None,
        aborted: false,
    };
    if n == 0 || !is_connected(g) {
        return summary;
    }
    // Greedy root tree.
    let mut dsu: Vec<usize> = (0..n).collect();
    fn find(d: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while d[r] != r {
            r = d[r];
        }
        let mut y = x;
        while d[y] != r {
            let nx = d[y];
            d[y] = r;
            y = nx;
        }
        r
    }
    let mut in_root = vec![false; edges.len()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        let (a, b) = (find(&mut dsu, u), find(&mut dsu, v));
        if a != b {
            dsu[a] = b;
            in_root[i] = true;
        }
    }
    let mut walker = TreeWalker {
        n,
        edges: &edges,
        in_root: &in_root,
        in_tree: in_root.clone(),
        visitor: &mut visitor,
        summary: &mut summary,
    };
    if walker.walk().is_break() {
        summary.aborted = true;
    }
    summary
}

struct TreeWalker<'a, F> {
    n: usize,
    edges: &'a [(usize, usize)],
    in_root: &'a [bool],
    in_tree: Vec<bool>,
    visitor: &'a mut F,
    summary: &'a mut EnumerationSummary,
}

impl<F: FnMut(&SpanningTree) -> ControlFlow<()>> TreeWalker<'_, F> {
    fn tree_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut nb = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if self.in_tree[i] {
                nb[u].push((v, i));
                nb[v].push((u, i));
            }
        }
        nb
    }

    /// Edge indices on the tree path from `s` to `t`.
    fn tree_path(nb: &[Vec<(usize, usize)>], s: usize, t: usize) -> Vec<usize> {
        let mut via = vec![None; nb.len()];
        let mut seen = vec![false; nb.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            if u == t {
                break;
            }
            for &(w, e) in &nb[u] {
                if !seen[w] {
                    seen[w] = true;
                    via[w] = Some((u, e));
                    stack.push(w);
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = t;
        while let Some((p, e)) = via[cur] {
            out.push(e);
            cur = p;
        }
        out
    }

    fn walk(&mut self) -> ControlFlow<()> {
        let tree_edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| self.in_tree[*i])
            .map(|(_, &e)| e)
            .collect();
        let tree =
            SpanningTree::from_edges(self.n, &tree_edges).expect("walker holds a spanning tree");
        self.summary.count += 1;
        self.summary.min_leaves = Some(
            self.summary
                .min_leaves
                .map_or(tree.leaf_count, |m| m.min(tree.leaf_count)),
        );
        (self.visitor)(&tree)?;

        let m = self.edges.len();
        let first_missing = (0..m)
            .find(|&i| self.in_root[i] && !self.in_tree[i])
            .unwrap_or(m);
        for f in 0..first_missing {
            if !(self.in_tree[f] && self.in_root[f]) {
                continue;
            }
            // Side of the cut containing f's first endpoint once f is removed.
            self.in_tree[f] = false;
            let nb = self.tree_adjacency();
            let (fu, fv) = self.edges[f];
            let mut side = vec![false; self.n];
            side[fu] = true;
            let mut stack = vec![fu];
            while let Some(u) = stack.pop() {
                for &(w, _) in &nb[u] {
                    if !side[w] {
                        side[w] = true;
                        stack.push(w);
                    }
                }
            }
            for g in 0..m {
                if self.in_tree[g] || self.in_root[g] || g == f {
                    continue;
                }
                let (gu, gv) = self.edges[g];
                if side[gu] == side[gv] {
                    continue;
                }
                self.in_tree[g] = true;
                let nb2 = self.tree_adjacency();
                let path = Self::tree_path(&nb2, fu, fv);
                let top = path.iter().copied().filter(|&e| !self.in_root[e]).max();
                let flow = if top == Some(g) {
                    self.walk()
                } else {
                    ControlFlow::Continue(())
                };
                self.in_tree[g] = false;
                if flow.is_break() {
                    self.in_tree[f] = true;
                    return flow;
                }
            }
            self.in_tree[f] = true;
        }
        ControlFlow::Continue(())
    }
}

/// Search for a spanning tree with at most `max_leaves` leaves.
///
/// Any such tree, rooted at one of its leaves and walked depth first, splits
/// into `leaves - 1` paths: the first starts at the root, every later one
/// hangs off an interior vertex of the tree built so far. The search grows
/// these paths one at a time and cuts a branch once the leaves already fixed
/// plus one per residual component that still needs its own path exceed the
/// allowance.
struct LeafSearch<'a> {
    adj: &'a [u128],
    all: u128,
    max_leaves: usize,
    /// Vertices known not to be a leaf of any qualifying tree.
    never_leaf: u128,
    max_nodes: Option<u64>,
    nodes: u64,
    edges: Vec<(usize, usize)>,
}

enum LeafStep {
    Found,
    Exhausted,
    OutOfBudget,
}

#[inline]
fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

impl LeafSearch<'_> {
    /// Lower bound on the final leaf count, or `None` if the state is dead.
    fn bound(&self, cur: usize, tree: u128, closed: u128) -> Option<usize> {
        let rest = self.all & !tree;
        let attach = tree & !closed & !(1 << cur);
        let mut dead = 0;
        for u in bits(rest) {
            let usable = self.adj[u] & (rest | attach | 1 << cur);
            match usable.count_ones() {
                0 => return None,
                1 => {
                    if self.never_leaf >> u & 1 == 1 {
                        return None;
                    }
                    dead += 1;
                }
                _ => {}
            }
        }
        let mut left = rest;
        let mut extra = 0;
        let mut cur_enters = false;
        while left != 0 {
            let comp = reach(self.adj, left & left.wrapping_neg(), left);
            left &= !comp;
            let touches_cur = self.adj[cur] & comp != 0;
            let touches_attach = bits(comp).any(|u| self.adj[u] & attach != 0);
            // Components next to `cur` alone can still hang off it once
            // the path moves on.
            if !touches_attach && !touches_cur {
                return None;
            }
            if touches_cur {
                cur_enters = true;
            }
            extra += 1;
        }
        if cur_enters {
            extra -= 1;
        }
        Some(closed.count_ones() as usize + (1 + extra).max(dead))
    }

    fn dfs(&mut self, cur: usize, tree: u128, closed: u128, paths: usize) -> LeafStep {
        self.nodes += 1;
        if self.max_nodes.is_some_and(|m| self.nodes > m) {
            return LeafStep::OutOfBudget;
        }
        let rest = self.all & !tree;
        if rest == 0 {
            let ok = self.never_leaf >> cur & 1 == 0
                && closed.count_ones() as usize + 1 <= self.max_leaves;
            return if ok {
                LeafStep::Found
            } else {
                LeafStep::Exhausted
            };
        }
        match self.bound(cur, tree, closed) {
            Some(b) if b <= self.max_leaves => {}
            _ => return LeafStep::Exhausted,
        }

        let mut ext: Vec<(u32, usize)> = bits(self.adj[cur] & rest)
            .map(|v| ((self.adj[v] & rest).count_ones(), v))
            .collect();
        ext.sort_unstable();
        for (_, v) in ext {
            self.edges.push((cur, v));
            match self.dfs(v, tree | 1 << v, closed, paths) {
                LeafStep::Exhausted => {
                    self.edges.pop();
                }
                other => return other,
            }
        }

        if paths + 1 < self.max_leaves && self.never_leaf >> cur & 1 == 0 {
            let closed2 = closed | 1 << cur;
            let attach = tree & !closed2;
            for w in bits(attach) {
                for u in bits(self.adj[w] & rest) {
                    self.edges.push((w, u));
                    match self.dfs(u, tree | 1 << u, closed2, paths + 1) {
                        LeafStep::Exhausted => {
                            self.edges.pop();
                        }
                        other => return other,
                    }
                }
            }
        }
        LeafStep::Exhausted
    }
}

fn leaf_search(
    g: &Graph,
    adj: &[u128],
    k: usize,
    budget: SearchBudget,
) -> (Verdict<SpanningTree>, u64) {
    let n = g.n();
    let all = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    let mut roots: Vec<usize> = (0..n).collect();
    roots.sort_by_key(|&v| (g.degree(v) != 1, v));
    let mut search = LeafSearch {
        adj,
        all,
        max_leaves: k,
        never_leaf: 0,
        max_nodes: budget.max_nodes,
        nodes: 0,
        edges: Vec::new(),
    };
    for r in roots {
        for v in bits(adj[r]) {
            search.edges.clear();
            search.edges.push((r, v));
            match search.dfs(v, 1 << r | 1 << v, 1 << r, 1) {
                LeafStep::Found => {
                    let tree = SpanningTree::from_edges(n, &search.edges)
                        .expect("search builds spanning trees");
                    return (Verdict::Yes(tree), search.nodes);
                }
                LeafStep::OutOfBudget => return (Verdict::Indeterminate, search.nodes),
                LeafStep::Exhausted => {}
            }
        }
        search.never_leaf |= 1 << r;
    }
    (Verdict::No, search.nodes)
}

/// Is there a spanning tree with at most `k` leaves? `k = 2` is answered by
/// the hamiltonian path search.
pub fn has_tree_le_k_leaves(
    g: &Graph,
    k: usize,
    budget: SearchBudget,
) -> Result<Verdict<SpanningTree>, ExactError> {
    Ok(tree_le_k_counted(g, k, budget)?.0)
}

fn tree_le_k_counted(
    g: &Graph,
    k: usize,
    budget: SearchBudget,
) -> Result<(Verdict<SpanningTree>, u64), ExactError> {
    let n = g.n();
    if n == 0 {
        return Err(ExactError::TooSmall(1));
    }
    if !is_connected(g) {
        return Err(ExactError::Disconnected);
    }
    let adj = g.masks128().ok_or(SearchError::TooLarge(n))?;
    if n == 1 {
        return Ok((Verdict::Yes(SpanningTree::from_edges(1, &[]).unwrap()), 0));
    }
    if k < 2 {
        return Ok((Verdict::No, 0));
    }
    if k == 2 {
        let all = if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        };
        let (r, nodes) = hamsearch::ham_path_in(&adj, all, budget, Pruning::default());
        return Ok((
            r.map(|p| SpanningTree::from_path(n, &p).expect("hamiltonian path")),
            nodes,
        ));
    }
    Ok(leaf_search(g, &adj, k, budget))
}

/// Spanning tree from a depth-first walk that always moves to the unvisited
/// neighbor with the fewest unvisited neighbors; best over all roots.
pub fn greedy_tree(g: &Graph) -> Option<SpanningTree> {
    let n = g.n();
    if n == 0 || !is_connected(g) {
        return None;
    }
    let mut best: Option<SpanningTree> = None;
    for root in 0..n {
        let mut seen = vec![false; n];
        let mut edges = Vec::with_capacity(n - 1);
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(&u) = stack.last() {
            let next = g
                .neighbors(u)
                .filter(|&w| !seen[w])
                .min_by_key(|&w| (g.neighbors(w).filter(|&x| !seen[x]).count(), w));
            match next {
                Some(w) => {
                    seen[w] = true;
                    edges.push((u, w));
                    stack.push(w);
                }
                None => {
                    stack.pop();
                }
            }
        }
        let t = SpanningTree::from_edges(n, &edges).expect("dfs tree spans a connected graph");
        if best.as_ref().is_none_or(|b| t.leaf_count < b.leaf_count) {
            best = Some(t);
        }
    }
    best
}

/// Minimum number of leaves over all spanning trees, by ascending decision
/// probes starting at 2.
pub fn min_leaf_number(g: &Graph, budget: SearchBudget) -> Result<MlResult, ExactError> {
    let n = g.n();
    if n < 2 {
        return Err(ExactError::TooSmall(2));
    }
    if !is_connected(g) {
        return Err(ExactError::Disconnected);
    }
    let upper = greedy_tree(g).expect("connected graph has a spanning tree");
    let pendant = (0..n).filter(|&v| g.degree(v) == 1).count();
    let mut nodes = 0;
    for k in pendant.max(2)..upper.leaf_count {
        let remaining = SearchBudget {
            max_nodes: budget.max_nodes.map(|m| m.saturating_sub(nodes)),
        };
        let (r, spent) = tree_le_k_counted(g, k, remaining)?;
        nodes += spent;
        match r {
            Verdict::Yes(witness) => {
                return Ok(MlResult {
                    ml: witness.leaf_count,
                    witness,
                    nodes,
                })
            }
            Verdict::No => {}
            Verdict::Indeterminate => {
                return Err(ExactError::Indeterminate {
                    lower: k,
                    upper: upper.leaf_count,
                    tree: Some(upper),
                    cover: None,
                })
            }
        }
    }
    Ok(MlResult {
        ml: upper.leaf_count,
        witness: upper,
        nodes,
    })
}

/// Greedy cover: repeatedly peel a longest-first depth-first path.
pub(crate) fn greedy_cover(g: &Graph) -> Vec<PathWitness> {
    let n = g.n();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if used[s] {
            continue;
        }
        used[s] = true;
        let mut path = vec![s];
        // Extend forward, then backward from the start.
        for _ in 0..2 {
            loop {
                let end = *path.last().unwrap();
                let next = g
                    .neighbors(end)
                    .filter(|&w| !used[w])
                    .min_by_key(|&w| (g.neighbors(w).filter(|&x| !used[x]).count(), w));
                match next {
                    Some(w) => {
                        used[w] = true;
                        path.push(w);
                    }
                    None => break,
                }
            }
            path.reverse();
        }
        out.push(PathWitness::new(path));
    }
    out
}

/// Minimum number of vertex-disjoint paths covering `g`.
///
/// The k-th probe asks for a hamiltonian cycle in `g` plus `k` mutually
/// non-adjacent vertices joined to every vertex; the cycle's stretches
/// between added vertices form the cover.
pub fn path_cover_number(g: &Graph, budget: SearchBudget) -> Result<MuResult, ExactError> {
    let n = g.n();
    if n == 0 {
        return Err(ExactError::TooSmall(1));
    }
    let adj = g.masks128().ok_or(SearchError::TooLarge(n))?;
    let all = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    let fallback = greedy_cover(g);
    let components = components_after_deletion(g, &VertexSet::empty(n));
    let mut nodes = 0;
    let remaining = |nodes: u64| SearchBudget {
        max_nodes: budget.max_nodes.map(|m| m.saturating_sub(nodes)),
    };
    for k in components.max(1)..fallback.len() {
        let r = if k == 1 {
            let (r, spent) =
                hamsearch::ham_path_in(&adj, all, remaining(nodes), Pruning::default());
            nodes += spent;
            r.map(|p| vec![PathWitness::new(p)])
        } else {
            if n + k > 128 {
                return Err(SearchError::TooLarge(n + k).into());
            }
            let mut aux = adj.clone();
            let hubs: u128 = ((1u128 << k) - 1) << n;
            for a in aux.iter_mut() {
                *a |= hubs;
            }
            aux.extend(std::iter::repeat_n(all, k));
            let (r, spent) = hamsearch::ham_cycle_in(
                &aux,
                all | hubs,
                n,
                hubs,
                remaining(nodes),
                Pruning::default(),
            );
            nodes += spent;
            r.map(|cycle| {
                cycle
                    .split(|&v| v >= n)
                    .filter(|seg| !seg.is_empty())
                    .map(|seg| PathWitness::new(seg.to_vec()))
                    .collect()
            })
        };
        match r {
            Verdict::Yes(cover) => {
                debug_assert_eq!(cover.len(), k);
                return Ok(MuResult {
                    mu: k,
                    cover,
                    nodes,
                });
            }
            Verdict::No => {}
            Verdict::Indeterminate => {
                return Err(ExactError::Indeterminate {
                    lower: k,
                    upper: fallback.len(),
                    tree: None,
                    cover: Some(fallback),
                })
            }
        }
    }
    Ok(MuResult {
        mu: fallback.len(),
        cover: fallback,
        nodes,
    })
}

/// `max(1, c(g - d) - |d|)`: deleting `d` leaves that many pieces, and each
/// deleted vertex can glue at most one pair of covering paths.
pub fn mu_lower_bound_deletion(g: &Graph, d: &VertexSet) -> usize {
    let comps = components_after_deletion(g, d) as isize;
    (comps - d.len() as isize).max(1) as usize
}

/// Checks that `cover` partitions the vertices of `g` into paths of `g`.
pub fn is_path_cover(g: &Graph, cover: &[PathWitness]) -> bool {
    let mut seen = vec![false; g.n()];
    for p in cover {
        if p.is_empty() || !p.is_path_in(g) {
            return false;
        }
        for &v in &p.vertices {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
    }
    seen.iter().all(|&s| s)
}
