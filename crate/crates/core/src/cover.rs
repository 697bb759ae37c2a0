//! Turning a vertex-disjoint path cover into a spanning tree with few leaves.
//!
//! The cover is first pushed to a local maximum of the sum of squared path
//! lengths; short paths are then re-threaded so that one end reaches outside
//! their vertex set and hung off other paths in increasing order of length.
//! Each short path costs at most one leaf and each long path at most two.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::CoverError;
use crate::exact::{greedy_cover, is_path_cover, path_cover_number, SpanningTree};
use crate::graph::{induced_subgraph, Graph, VertexSet};
use crate::hamsearch::{has_ham_path_from, PathWitness, SearchBudget, Verdict};

/// Paths with at least this many vertices are long.
pub const LONG_PATH_THRESHOLD: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VdpCover {
    pub paths: Vec<PathWitness>,
    pub threshold: usize,
    /// Set when the cover is known to have minimum cardinality.
    pub minimum_certified: bool,
}

impl VdpCover {
    pub fn new(paths: Vec<PathWitness>) -> Self {
        Self::with_threshold(paths, LONG_PATH_THRESHOLD)
    }

    pub fn with_threshold(paths: Vec<PathWitness>, threshold: usize) -> Self {
        VdpCover {
            paths,
            threshold,
            minimum_certified: false,
        }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn is_long(&self, i: usize) -> bool {
        self.paths[i].len() >= self.threshold
    }

    pub fn short_count(&self) -> usize {
        (0..self.len()).filter(|&i| !self.is_long(i)).count()
    }

    pub fn long_count(&self) -> usize {
        (0..self.len()).filter(|&i| self.is_long(i)).count()
    }

    pub fn sum_squares(&self) -> usize {
        self.paths.iter().map(|p| p.len() * p.len()).sum()
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        is_path_cover(g, &self.paths)
    }
}

/// Greedy depth-first peeling; valid but not optimized.
pub fn initial_vdp_cover(g: &Graph) -> VdpCover {
    VdpCover::new(greedy_cover(g))
}

/// One move of the exchange: the end of path `q` (its last vertex if
/// `q_back`, else its first) is joined to `p[at]`, and `q` absorbs
/// `p[at]` together with the part of `p` beyond it (`toward_back`) or before
/// it. Taking all of `p` merges the two paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exchange {
    pub q: usize,
    pub q_back: bool,
    pub p: usize,
    pub at: usize,
    pub toward_back: bool,
}

impl Exchange {
    /// Number of vertices moved from `p` to `q`.
    pub fn moved(&self, p_len: usize) -> usize {
        if self.toward_back {
            p_len - self.at
        } else {
            self.at + 1
        }
    }
}

/// Change of the sum of squares when `k` vertices move from a path of
/// length `p` to one of length `q`: `2k^2 + 2k(q - p)`.
pub fn exchange_gain(q: usize, p: usize, k: usize) -> i64 {
    let (q, p, k) = (q as i64, p as i64, k as i64);
    2 * k * k + 2 * k * (q - p)
}

/// Applies `mv`, checking that it is legal in `g`.
pub fn apply_exchange(g: &Graph, c: &VdpCover, mv: Exchange) -> Result<VdpCover, CoverError> {
    let bad = |why: &str| CoverError::InvalidCover(why.to_string());
    if mv.q >= c.len() {
        return Err(CoverError::BadIndex(mv.q));
    }
    if mv.p >= c.len() {
        return Err(CoverError::BadIndex(mv.p));
    }
    if mv.p == mv.q {
        return Err(bad("exchange needs two distinct paths"));
    }
    let qv = &c.paths[mv.q].vertices;
    let pv = &c.paths[mv.p].vertices;
    if mv.at >= pv.len() {
        return Err(bad("exchange position outside the path"));
    }
    let end = if mv.q_back {
        *qv.last().unwrap()
    } else {
        qv[0]
    };
    if !g.has_edge(end, pv[mv.at]) {
        return Err(bad("path end is not adjacent to the exchange vertex"));
    }
    let mut new_q = qv.clone();
    if !mv.q_back {
        new_q.reverse();
    }
    let (taken, kept): (Vec<usize>, Vec<usize>) = if mv.toward_back {
        (pv[mv.at..].to_vec(), pv[..mv.at].to_vec())
    } else {
        (
            pv[..=mv.at].iter().rev().copied().collect(),
            pv[mv.at + 1..].to_vec(),
        )
    };
    new_q.extend(taken);
    let mut paths = c.paths.clone();
    paths[mv.q] = PathWitness::new(new_q);
    if kept.is_empty() {
        paths.remove(mv.p);
    } else {
        paths[mv.p] = PathWitness::new(kept);
    }
    Ok(VdpCover {
        paths,
        threshold: c.threshold,
        minimum_certified: c.minimum_certified,
    })
}

/// First available exchange: paths `q` in index order, back end before
/// front end, partner vertices ascending, the larger side of the split.
pub fn find_exchange(g: &Graph, c: &VdpCover) -> Option<Exchange> {
    let n = g.n();
    let mut owner = vec![(usize::MAX, 0); n];
    for (i, p) in c.paths.iter().enumerate() {
        for (j, &v) in p.vertices.iter().enumerate() {
            owner[v] = (i, j);
        }
    }
    for (qi, q) in c.paths.iter().enumerate() {
        let ends = if q.len() == 1 {
            vec![(true, q.vertices[0])]
        } else {
            vec![(true, *q.vertices.last().unwrap()), (false, q.vertices[0])]
        };
        for (q_back, e) in ends {
            for x in g.neighbors(e) {
                let (pi, at) = owner[x];
                if pi == qi || c.paths[pi].len() > q.len() {
                    continue;
                }
                let plen = c.paths[pi].len();
                let toward_back = plen - at >= at + 1;
                return Some(Exchange {
                    q: qi,
                    q_back,
                    p: pi,
                    at,
                    toward_back,
                });
            }
        }
    }
    None
}

fn exchange_to_fixpoint(g: &Graph, mut c: VdpCover) -> VdpCover {
    while let Some(mv) = find_exchange(g, &c) {
        c = apply_exchange(g, &c, mv).expect("found exchanges are legal");
    }
    c
}

/// Runs exchanges until none applies. Every exchange strictly raises the sum
/// of squares, so this stops after fewer than `n^2` moves. When `exact_mu`
/// is given and the local optimum has more paths, the search restarts from
/// a minimum cover computed exactly.
pub fn optimize_cover(
    g: &Graph,
    c: &VdpCover,
    exact_mu: Option<usize>,
) -> Result<VdpCover, CoverError> {
    if !c.is_valid_for(g) {
        return Err(CoverError::InvalidCover(
            "paths do not partition the vertices".into(),
        ));
    }
    let mut out = exchange_to_fixpoint(g, c.clone());
    if let Some(mu) = exact_mu {
        if out.len() > mu {
            let exact = path_cover_number(g, SearchBudget::UNLIMITED)?;
            let seeded = VdpCover::with_threshold(exact.cover, c.threshold);
            out = exchange_to_fixpoint(g, seeded);
        }
        out.minimum_certified = out.len() == mu;
    }
    Ok(out)
}

/// A short path re-threaded so that its first vertex reaches another path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub index: usize,
    /// Hamiltonian path of the induced subgraph; `path.vertices[0]` is the
    /// endpoint that gets attached.
    pub path: PathWitness,
    /// Outside neighbors of the attached endpoint, preferred first (longest
    /// owning path, then lowest path index, then lowest vertex).
    pub anchors: Vec<usize>,
}

impl Attachment {
    pub fn anchor(&self) -> usize {
        self.anchors[0]
    }
}

/// Finds a hamiltonian path of `G[V(P)]` whose first vertex has a neighbor
/// outside `V(P)`. The path itself is kept when one of its ends already has
/// such a neighbor.
pub fn reroute_short_path(g: &Graph, c: &VdpCover, i: usize) -> Result<Attachment, CoverError> {
    let p = c.paths.get(i).ok_or(CoverError::BadIndex(i))?;
    if p.len() >= c.threshold {
        return Err(CoverError::LongPath {
            index: i,
            len: p.len(),
            threshold: c.threshold,
        });
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (j, q) in c.paths.iter().enumerate() {
        for &v in &q.vertices {
            owner[v] = j;
        }
    }
    let anchors_of = |v: usize| {
        let mut a: Vec<usize> = g.neighbors(v).filter(|&w| owner[w] != i).collect();
        a.sort_by_key(|&w| (std::cmp::Reverse(c.paths[owner[w]].len()), owner[w], w));
        a
    };
    let best_end = [p.vertices[0], *p.vertices.last().unwrap()]
        .into_iter()
        .enumerate()
        .filter(|&(_, v)| !anchors_of(v).is_empty())
        .min_by_key(|&(k, v)| {
            let a = anchors_of(v)[0];
            (std::cmp::Reverse(c.paths[owner[a]].len()), owner[a], k)
        });
    if let Some((k, v)) = best_end {
        let mut vertices = p.vertices.clone();
        if k == 1 {
            vertices.reverse();
        }
        return Ok(Attachment {
            index: i,
            path: PathWitness::new(vertices),
            anchors: anchors_of(v),
        });
    }
    let x = VertexSet::from_vertices(g.n(), p.vertices.iter().copied())
        .expect("path vertices are in range");
    let (h, map) = induced_subgraph(g, &x).expect("paths are nonempty");
    for (local, &v) in map.iter().enumerate() {
        if anchors_of(v).is_empty() {
            continue;
        }
        if let Verdict::Yes(w) = has_ham_path_from(&h, local, SearchBudget::UNLIMITED)? {
            return Ok(Attachment {
                index: i,
                path: PathWitness::new(w.vertices.iter().map(|&u| map[u]).collect()),
                anchors: anchors_of(v),
            });
        }
    }
    Err(CoverError::NoAttachment { index: i })
}

/// Which of the accounting inequalities held on a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoverChecks {
    /// leaves <= s + 2l
    pub leaves_within_bound: bool,
    /// s + l <= n/10
    pub few_paths: bool,
    /// s + 18l <= n
    pub long_paths_fit: bool,
    /// s + 2l <= 13n/85
    pub within_13_85: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub n: usize,
    pub initial_size: usize,
    pub final_size: usize,
    pub sum_squares: usize,
    pub short_count: usize,
    pub long_count: usize,
    pub tree: SpanningTree,
    pub bound_s_plus_2l: usize,
    pub bound_13_85: Ratio<u64>,
    /// Short paths that could not be hung off another tree component.
    pub fallback_joins: usize,
    pub minimum_certified: bool,
    pub checks: CoverChecks,
    pub certified: bool,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
        a != b
    }
}

/// Assembles a spanning tree from the cover: short paths are re-threaded and
/// attached one at a time in increasing order of length (ties by index), long
/// paths are taken as they are, and leftover components are joined by
/// arbitrary edges.
pub fn cover_to_tree(g: &Graph, c: &VdpCover) -> Result<CoverReport, CoverError> {
    if !c.is_valid_for(g) {
        return Err(CoverError::InvalidCover(
            "paths do not partition the vertices".into(),
        ));
    }
    let n = g.n();
    let mut dsu = Dsu((0..n).collect());
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n.saturating_sub(1));
    let add = |dsu: &mut Dsu, edges: &mut Vec<(usize, usize)>, u: usize, v: usize| {
        if dsu.union(u, v) {
            edges.push((u, v));
            true
        } else {
            false
        }
    };

    let mut order: Vec<usize> = (0..c.len()).filter(|&i| !c.is_long(i)).collect();
    order.sort_by_key(|&i| (c.paths[i].len(), i));
    let mut fallback_joins = 0;
    for i in (0..c.len()).filter(|&i| c.is_long(i)) {
        for w in c.paths[i].vertices.windows(2) {
            add(&mut dsu, &mut edges, w[0], w[1]);
        }
    }
    for &i in &order {
        match reroute_short_path(g, c, i) {
            Ok(att) => {
                for w in att.path.vertices.windows(2) {
                    add(&mut dsu, &mut edges, w[0], w[1]);
                }
                let head = att.path.vertices[0];
                let root = dsu.find(head);
                let whole = (0..n).all(|v| dsu.find(v) == root);
                let joined = att
                    .anchors
                    .iter()
                    .any(|&a| add(&mut dsu, &mut edges, head, a));
                if !joined && !whole {
                    fallback_joins += 1;
                }
            }
            Err(CoverError::NoAttachment { .. }) => {
                for w in c.paths[i].vertices.windows(2) {
                    add(&mut dsu, &mut edges, w[0], w[1]);
                }
                // A single path spanning everything needs no attachment.
                if c.len() > 1 {
                    fallback_joins += 1;
                }
            }
            Err(e) => return Err(e),
        }
    }
    for (u, v) in g.edges() {
        add(&mut dsu, &mut edges, u, v);
    }
    let tree = SpanningTree::from_edges(n, &edges)
        .ok_or_else(|| CoverError::InvalidCover("graph is disconnected".into()))?;

    let s = c.short_count();
    let l = c.long_count();
    let bound = s + 2 * l;
    let n64 = n as u64;
    let bound_13_85 = Ratio::new(13 * n64, 85);
    let checks = CoverChecks {
        leaves_within_bound: tree.leaf_count <= bound,
        few_paths: Ratio::from_integer((s + l) as u64) <= Ratio::new(n64, 10),
        long_paths_fit: s + 18 * l <= n,
        within_13_85: Ratio::from_integer(bound as u64) <= bound_13_85,
    };
    let certified = c.minimum_certified
        && fallback_joins == 0
        && checks.leaves_within_bound
        && checks.few_paths
        && checks.long_paths_fit
        && checks.within_13_85;
    Ok(CoverReport {
        n,
        initial_size: c.len(),
        final_size: c.len(),
        sum_squares: c.sum_squares(),
        short_count: s,
        long_count: l,
        tree,
        bound_s_plus_2l: bound,
        bound_13_85,
        fallback_joins,
        minimum_certified: c.minimum_certified,
        checks,
        certified,
    })
}

/// Greedy cover, exchange optimization (to the exact minimum when `exact_mu`
/// is supplied), then tree assembly.
pub fn run_cover_procedure(g: &Graph, exact_mu: Option<usize>) -> Result<CoverReport, CoverError> {
    let initial = initial_vdp_cover(g);
    let optimized = optimize_cover(g, &initial, exact_mu)?;
    let mut report = cover_to_tree(g, &optimized)?;
    report.initial_size = initial.len();
    Ok(report)
}
