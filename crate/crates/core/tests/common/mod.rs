//! Independent oracles and seeded random graph sources shared by the
//! integration tests. Nothing here calls into the search code under test.
#![allow(dead_code)]

use std::collections::HashSet;

use minleaf::iso::are_isomorphic;
use minleaf::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Heap's algorithm over `0..n`, calling `f` on each permutation.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

pub fn is_path(g: &Graph, seq: &[usize]) -> bool {
    seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// Hamiltonian path endpoints (unordered, `lo <= hi`) within `universe`,
/// found by trying every ordering of it.
pub fn ham_endpoints_bruteforce(g: &Graph, universe: &[usize]) -> HashSet<(usize, usize)> {
    let mut out = HashSet::new();
    for_each_permutation(universe.len(), |p| {
        let seq: Vec<usize> = p.iter().map(|&i| universe[i]).collect();
        if is_path(g, &seq) {
            let (a, b) = (seq[0], *seq.last().unwrap());
            out.insert((a.min(b), a.max(b)));
        }
    });
    out
}

pub fn has_ham_path_bruteforce(g: &Graph) -> bool {
    let all: Vec<usize> = (0..g.n()).collect();
    g.n() == 0 || !ham_endpoints_bruteforce(g, &all).is_empty()
}

pub fn has_ham_cycle_bruteforce(g: &Graph) -> bool {
    let all: Vec<usize> = (0..g.n()).collect();
    g.n() >= 3
        && ham_endpoints_bruteforce(g, &all)
            .iter()
            .any(|&(a, b)| g.has_edge(a, b))
}

fn norm(p: (usize, usize)) -> (usize, usize) {
    (p.0.min(p.1), p.0.max(p.1))
}

/// Unordered pairs of unordered endpoint pairs of two disjoint paths with
/// at least two vertices each that together span `universe`.
pub fn two_path_endpoints_bruteforce(
    g: &Graph,
    universe: &[usize],
) -> HashSet<((usize, usize), (usize, usize))> {
    let mut out = HashSet::new();
    for_each_permutation(universe.len(), |p| {
        let seq: Vec<usize> = p.iter().map(|&i| universe[i]).collect();
        for cut in 2..seq.len().saturating_sub(1) {
            let (x, y) = seq.split_at(cut);
            if is_path(g, x) && is_path(g, y) {
                let e1 = norm((x[0], *x.last().unwrap()));
                let e2 = norm((y[0], *y.last().unwrap()));
                out.insert((e1.min(e2), e1.max(e2)));
            }
        }
    });
    out
}

pub fn has_two_paths(
    table: &HashSet<((usize, usize), (usize, usize))>,
    p: (usize, usize),
    q: (usize, usize),
) -> bool {
    let (p, q) = (norm(p), norm(q));
    table.contains(&(p.min(q), p.max(q)))
}

pub fn has_pair(table: &HashSet<(usize, usize)>, p: (usize, usize)) -> bool {
    table.contains(&norm(p))
}

/// Number of connected components, by union-find.
pub fn component_count(g: &Graph) -> usize {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    (0..g.n()).filter(|&v| find(&mut parent, v) == v).count()
}

pub fn without_vertices(g: &Graph, gone: &[usize]) -> Graph {
    let keep: Vec<usize> = (0..g.n()).filter(|v| !gone.contains(v)).collect();
    let index = |v: usize| keep.iter().position(|&k| k == v);
    let edges = g
        .edges()
        .into_iter()
        .filter_map(|(u, v)| Some((index(u)?, index(v)?)));
    Graph::from_edges(keep.len(), edges).unwrap()
}

/// Vertex connectivity by deleting every vertex subset of size < cap.
pub fn connectivity_bruteforce(g: &Graph, cap: usize) -> usize {
    let n = g.n();
    if component_count(g) != 1 {
        return 0;
    }
    for k in 0..cap {
        if k + 2 > n {
            return k.min(cap);
        }
        let mut found = false;
        subsets(n, k, &mut |s| {
            if !found && component_count(&without_vertices(g, s)) > 1 {
                found = true;
            }
        });
        if found {
            return k;
        }
    }
    cap
}

pub fn subsets(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

/// Uniform-ish random connected graph: a random spanning tree plus extra
/// edges kept with probability `p`.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = HashSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i], order[j]);
        edges.insert((a.min(b), a.max(b)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random simple cubic graph on `n` vertices by the configuration model,
/// rejecting loops, multi-edges and graphs below the wanted connectivity.
pub fn random_cubic(rng: &mut impl Rng, n: usize, min_conn: usize) -> Graph {
    assert!(n >= 4 && n % 2 == 0);
    loop {
        let mut stubs: Vec<usize> = (0..3 * n).map(|i| i / 3).collect();
        stubs.shuffle(rng);
        let mut edges = HashSet::new();
        let ok = stubs
            .chunks(2)
            .all(|e| e[0] != e[1] && edges.insert((e[0].min(e[1]), e[0].max(e[1]))));
        if !ok {
            continue;
        }
        let g = Graph::from_edges(n, edges).unwrap();
        if connectivity_bruteforce(&g, min_conn) >= min_conn {
            return g;
        }
    }
}

/// Pairwise non-isomorphic representatives.
pub fn dedup_isomorphic(graphs: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let mut reps: Vec<Graph> = Vec::new();
    for g in graphs {
        if !reps.iter().any(|r| are_isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    reps
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// All labeled graphs on `n` vertices with every degree in `degrees`,
/// built edge by edge with degree caps.
pub fn labeled_graphs(n: usize, degrees: &[usize], connected_only: bool) -> Vec<Graph> {
    let pairs = all_pairs(n);
    let max = *degrees.iter().max().unwrap();
    let mut out = Vec::new();
    let mut deg = vec![0; n];
    let mut chosen = Vec::new();
    fn rec(
        i: usize,
        pairs: &[(usize, usize)],
        deg: &mut Vec<usize>,
        chosen: &mut Vec<(usize, usize)>,
        n: usize,
        degrees: &[usize],
        max: usize,
        out: &mut Vec<Graph>,
    ) {
        if i == pairs.len() {
            if deg.iter().all(|d| degrees.contains(d)) {
                out.push(Graph::from_edges(n, chosen.iter().copied()).unwrap());
            }
            return;
        }
        let (u, v) = pairs[i];
        // Once every pair at u has been decided, u's degree is final.
        let last_for_u = v == n - 1;
        if deg[u] < max && deg[v] < max {
            deg[u] += 1;
            deg[v] += 1;
            chosen.push((u, v));
            if !last_for_u || degrees.contains(&deg[u]) {
                rec(i + 1, pairs, deg, chosen, n, degrees, max, out);
            }
            chosen.pop();
            deg[u] -= 1;
            deg[v] -= 1;
        }
        if !last_for_u || degrees.contains(&deg[u]) {
            rec(i + 1, pairs, deg, chosen, n, degrees, max, out);
        }
    }
    rec(0, &pairs, &mut deg, &mut chosen, n, degrees, max, &mut out);
    if connected_only {
        out.retain(|g| component_count(g) == 1);
    }
    out
}

/// Connected cubic graphs on `n <= 10` vertices up to isomorphism, from
/// the labeled graphs whose labels follow a breadth-first order from vertex
/// 0 (every connected graph has such a labeling): a larger endpoint is
/// either already discovered or the next fresh label.
pub fn cubic_classes_bruteforce(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = all_pairs(n).into_iter().filter(|&(u, _)| u != 0).collect();
    let mut deg = vec![0; n];
    deg[0] = 3;
    for v in 1..=3 {
        deg[v] = 1;
    }
    let mut found = Vec::new();
    struct Walk<'a> {
        pairs: &'a [(usize, usize)],
        n: usize,
        deg: Vec<usize>,
        chosen: Vec<(usize, usize)>,
        found: &'a mut Vec<Graph>,
    }
    fn rec(w: &mut Walk, i: usize, fresh: usize) {
        if w.deg.iter().all(|&d| d == 3) {
            w.found.push(Graph::from_edges(w.n, w.chosen.iter().copied()).unwrap());
            return;
        }
        if i == w.pairs.len() {
            return;
        }
        let (u, v) = w.pairs[i];
        let last_for_u = v == w.n - 1;
        if w.deg[u] < 3 && w.deg[v] < 3 && v <= fresh {
            w.deg[u] += 1;
            w.deg[v] += 1;
            w.chosen.push((u, v));
            if !last_for_u || w.deg[u] == 3 {
                rec(w, i + 1, fresh.max(v + 1));
            }
            w.chosen.pop();
            w.deg[u] -= 1;
            w.deg[v] -= 1;
        }
        if !last_for_u || w.deg[u] == 3 {
            rec(w, i + 1, fresh);
        }
    }
    let mut walk = Walk {
        pairs: &pairs,
        n,
        deg,
        chosen: vec![(0, 1), (0, 2), (0, 3)],
        found: &mut found,
    };
    rec(&mut walk, 0, 4);
    found.retain(|g| component_count(g) == 1);
    dedup_isomorphic(found)
}

/// graph6 encoding written straight from the format description, for
/// `n <= 62`.
pub fn graph6_reference(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= 62);
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    while bits.len() % 6 != 0 {
        bits.push(false);
    }
    let mut s = String::new();
    s.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let v = chunk.iter().fold(0u8, |acc, &b| acc << 1 | b as u8);
        s.push((v + 63) as char);
    }
    s
}

/// Minimum leaves over every spanning tree, by trying every subset of
/// n−1 edges. Only for small edge counts.
pub fn min_leaves_bruteforce(g: &Graph) -> Option<usize> {
    let edges = g.edges();
    let n = g.n();
    let mut best = None;
    subsets(edges.len(), n - 1, &mut |s| {
        let t = Graph::from_edges(n, s.iter().map(|&i| edges[i])).unwrap();
        if component_count(&t) == 1 {
            let leaves = (0..n).filter(|&v| t.degree(v) == 1).count();
            best = Some(best.map_or(leaves, |b: usize| b.min(leaves)));
        }
    });
    best
}

/// Spanning tree count by trying every subset of n−1 edges.
pub fn spanning_tree_count_bruteforce(g: &Graph) -> u64 {
    let edges = g.edges();
    let n = g.n();
    let mut count = 0;
    subsets(edges.len(), n - 1, &mut |s| {
        let t = Graph::from_edges(n, s.iter().map(|&i| edges[i])).unwrap();
        if component_count(&t) == 1 {
            count += 1;
        }
    });
    count
}

/// Path cover number by trying every ordering and every way of cutting it
/// into consecutive paths (fewest cuts wins). Only for tiny graphs.
pub fn path_cover_bruteforce(g: &Graph) -> usize {
    let n = g.n();
    let mut best = n;
    for_each_permutation(n, |p| {
        let breaks = p.windows(2).filter(|w| !g.has_edge(w[0], w[1])).count();
        best = best.min(breaks + 1);
    });
    best
}

/// Proper 2-colouring by breadth-first search.
pub fn two_colorable(g: &Graph) -> bool {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    for s in 0..g.n() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for v in g.neighbors(u) {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

type PairTable = HashSet<(usize, usize)>;
type TwoPathTable = HashSet<((usize, usize), (usize, usize))>;

/// The three J-cell conditions evaluated literally from permutation
/// tables of `h` and of every `h − v`.
pub struct JCellOracle {
    n: usize,
    full: (PairTable, TwoPathTable),
    deleted: Vec<(PairTable, TwoPathTable)>,
}

impl JCellOracle {
    pub fn new(h: &Graph) -> Self {
        let tables = |u: &[usize]| (ham_endpoints_bruteforce(h, u), two_path_endpoints_bruteforce(h, u));
        let all: Vec<usize> = (0..h.n()).collect();
        let deleted = (0..h.n())
            .map(|v| {
                let rest: Vec<usize> = all.iter().copied().filter(|&w| w != v).collect();
                tables(&rest)
            })
            .collect();
        JCellOracle {
            n: h.n(),
            full: tables(&all),
            deleted,
        }
    }

    fn listed_good(t: &(PairTable, TwoPathTable), [a, b, c, d]: [usize; 4], avoid: Option<usize>) -> bool {
        let ok = |vs: &[usize]| avoid.map_or(true, |v| !vs.contains(&v));
        (ok(&[a, b]) && has_pair(&t.0, (a, b)))
            || (ok(&[c, d]) && has_pair(&t.0, (c, d)))
            || (ok(&[a, c]) && has_pair(&t.0, (a, c)))
            || (ok(&[b, d]) && has_pair(&t.0, (b, d)))
            || (ok(&[a, b, c, d]) && has_two_paths(&t.1, (a, b), (c, d)))
            || (ok(&[a, b, c, d]) && has_two_paths(&t.1, (a, c), (b, d)))
    }

    pub fn is_jcell(&self, q: [usize; 4]) -> bool {
        let [a, b, c, d] = q;
        let cond1 = has_pair(&self.full.0, (a, d)) && has_pair(&self.full.0, (b, c));
        let cond2 = !Self::listed_good(&self.full, q, None);
        let cond3 = (0..self.n).all(|v| Self::listed_good(&self.deleted[v], q, Some(v)));
        cond1 && cond2 && cond3
    }
}

/// Every automorphism of `g`, by trying all permutations.
pub fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let edges = g.edges();
    let mut out = Vec::new();
    for_each_permutation(g.n(), |p| {
        if edges.iter().all(|&(u, v)| g.has_edge(p[u], p[v])) {
            out.push(p.to_vec());
        }
    });
    out
}
