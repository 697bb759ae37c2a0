//! Exhaustive hamiltonian path and cycle queries with structural pruning.
//!
//! All queries run a depth-first extension of a single path over 128-bit
//! adjacency masks. Three cuts are applied at every node, each of which can
//! be switched off through [`Pruning`]:
//!
//! * dead ends: an unvisited vertex with fewer than two usable neighbors
//!   must be the final vertex, so at most one may exist;
//! * connectivity: the unvisited vertices must induce a connected graph;
//! * ordering: moves are tried by ascending residual degree.

use serde::Serialize;

use crate::error::SearchError;
use crate::graph::{is_connected, Graph};

/// Optional cap on the number of search-tree nodes expanded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
}

impl SearchBudget {
    pub const UNLIMITED: SearchBudget = SearchBudget { max_nodes: None };

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max_nodes),
        }
    }
}

/// Result of an exponential search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Yes(W),
    No,
    /// The node budget ran out before the search completed.
    Indeterminate,
}

impl<W> Verdict<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Yes(w) => Some(w),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(W) -> U) -> Verdict<U> {
        match self {
            Verdict::Yes(w) => Verdict::Yes(f(w)),
            Verdict::No => Verdict::No,
            Verdict::Indeterminate => Verdict::Indeterminate,
        }
    }

    /// `Some(true)` for Yes, `Some(false)` for No.
    pub fn decided(&self) -> Option<bool> {
        match self {
            Verdict::Yes(_) => Some(true),
            Verdict::No => Some(false),
            Verdict::Indeterminate => None,
        }
    }
}

/// Ordered list of distinct vertices; consecutive entries are adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PathWitness {
    pub vertices: Vec<usize>,
}

impl PathWitness {
    pub fn new(vertices: Vec<usize>) -> Self {
        PathWitness { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.vertices.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.vertices.last().copied()
    }

    /// Checks distinctness and adjacency of consecutive vertices in `g`.
    pub fn is_path_in(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.n()];
        for &v in &self.vertices {
            if v >= g.n() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        self.vertices.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    /// A path through every vertex of `g`.
    pub fn is_hamiltonian_path_in(&self, g: &Graph) -> bool {
        self.vertices.len() == g.n() && self.is_path_in(g)
    }

    /// A hamiltonian path whose last vertex is adjacent to its first.
    pub fn is_hamiltonian_cycle_in(&self, g: &Graph) -> bool {
        self.is_hamiltonian_path_in(g)
            && g.n() >= 3
            && g.has_edge(self.vertices[0], self.vertices[g.n() - 1])
    }
}

/// Switches for the individual pruning rules. All on by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pruning {
    pub dead_ends: bool,
    pub connectivity: bool,
    pub ordering: bool,
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning {
            dead_ends: true,
            connectivity: true,
            ordering: true,
        }
    }
}

impl Pruning {
    pub const NONE: Pruning = Pruning {
        dead_ends: false,
        connectivity: false,
        ordering: false,
    };
}

#[inline]
fn bit(v: usize) -> u128 {
    1u128 << v
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

/// Vertices of `within` reachable from `from` inside `within`.
#[inline]
pub(crate) fn reach(adj: &[u128], from: u128, within: u128) -> u128 {
    let mut seen = from & within;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

#[inline]
pub(crate) fn is_connected_mask(adj: &[u128], set: u128) -> bool {
    set == 0 || reach(adj, set & set.wrapping_neg(), set) == set
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

/// One path-extension search over the vertex set `universe`.
pub(crate) struct PathSearch<'a> {
    adj: &'a [u128],
    universe: u128,
    pruning: Pruning,
    /// Required final vertex.
    end: Option<usize>,
    /// Cycle mode: the final vertex must be adjacent to this start vertex.
    close_to: Option<usize>,
    /// Vertices that may not be the final vertex.
    no_end: u128,
    /// Pairwise twins; they must be entered in ascending order.
    twins: u128,
    max_nodes: Option<u64>,
    pub nodes: u64,
    path: Vec<usize>,
}

impl<'a> PathSearch<'a> {
    pub(crate) fn new(adj: &'a [u128], universe: u128, pruning: Pruning) -> Self {
        PathSearch {
            adj,
            universe,
            pruning,
            end: None,
            close_to: None,
            no_end: 0,
            twins: 0,
            max_nodes: None,
            nodes: 0,
            path: Vec::new(),
        }
    }

    pub(crate) fn end_at(mut self, end: usize) -> Self {
        self.end = Some(end);
        self
    }

    pub(crate) fn closing(mut self, start: usize) -> Self {
        self.close_to = Some(start);
        self
    }

    pub(crate) fn forbid_end(mut self, mask: u128) -> Self {
        self.no_end = mask;
        self
    }

    pub(crate) fn twins(mut self, mask: u128) -> Self {
        self.twins = mask;
        self
    }

    pub(crate) fn budget(mut self, budget: SearchBudget, spent: u64) -> Self {
        self.max_nodes = budget.max_nodes.map(|m| m.saturating_sub(spent));
        self
    }

    /// Runs from `start`; returns the path on success.
    pub(crate) fn run(&mut self, start: usize) -> Verdict<Vec<usize>> {
        self.path.clear();
        self.path.push(start);
        match self.dfs(start, bit(start)) {
            Step::Found => Verdict::Yes(std::mem::take(&mut self.path)),
            Step::Exhausted => Verdict::No,
            Step::OutOfBudget => Verdict::Indeterminate,
        }
    }

    fn finished_ok(&self, cur: usize) -> bool {
        if let Some(e) = self.end {
            if cur != e {
                return false;
            }
        }
        if let Some(s) = self.close_to {
            if self.path.len() < 3 || self.adj[cur] & bit(s) == 0 {
                return false;
            }
        }
        self.no_end & bit(cur) == 0
    }

    /// Dead-end test on the residual graph. Returns false to prune.
    fn dead_ends_ok(&self, cur: usize, rest: u128) -> bool {
        let mut avail = rest | bit(cur);
        if let Some(s) = self.close_to {
            avail |= bit(s);
        }
        let mut ends = 0u32;
        for u in bits(rest) {
            let nb = self.adj[u] & avail;
            let d = nb.count_ones();
            if d >= 2 {
                continue;
            }
            if d == 0 || self.close_to.is_some() {
                return false;
            }
            // u must be the final vertex.
            ends += 1;
            if ends > 1 || self.no_end & bit(u) != 0 || self.end.is_some_and(|e| e != u) {
                return false;
            }
            if nb == bit(cur) && rest != bit(u) {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, cur: usize, visited: u128) -> Step {
        self.nodes += 1;
        if self.max_nodes.is_some_and(|m| self.nodes > m) {
            return Step::OutOfBudget;
        }
        let rest = self.universe & !visited;
        if rest == 0 {
            return if self.finished_ok(cur) {
                Step::Found
            } else {
                Step::Exhausted
            };
        }
        if self.end == Some(cur) {
            return Step::Exhausted;
        }
        let mut cand = self.adj[cur] & rest;
        if cand == 0 {
            return Step::Exhausted;
        }
        if let Some(e) = self.end {
            if rest != bit(e) {
                cand &= !bit(e);
            }
        }
        if self.twins != 0 {
            let next_twin = rest & self.twins;
            if next_twin != 0 {
                let lowest = next_twin & next_twin.wrapping_neg();
                cand &= !(self.twins & !lowest);
            }
        }
        if self.pruning.dead_ends && !self.dead_ends_ok(cur, rest) {
            return Step::Exhausted;
        }
        if self.pruning.connectivity && !is_connected_mask(self.adj, rest) {
            return Step::Exhausted;
        }

        let mut order: [(u32, usize); 128] = [(0, 0); 128];
        let mut k = 0;
        for v in bits(cand) {
            let key = if self.pruning.ordering {
                (self.adj[v] & rest).count_ones()
            } else {
                0
            };
            order[k] = (key, v);
            k += 1;
        }
        let order = &mut order[..k];
        if self.pruning.ordering {
            order.sort_unstable();
        }
        for &(_, v) in order.iter() {
            self.path.push(v);
            match self.dfs(v, visited | bit(v)) {
                Step::Exhausted => {
                    self.path.pop();
                }
                other => return other,
            }
        }
        Step::Exhausted
    }
}

fn masks(g: &Graph) -> Result<Vec<u128>, SearchError> {
    g.masks128().ok_or(SearchError::TooLarge(g.n()))
}

fn full(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), SearchError> {
    if v >= g.n() {
        Err(SearchError::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        })
    } else {
        Ok(())
    }
}

/// Hamiltonian path over the vertex subset `universe`.
pub(crate) fn ham_path_in(
    adj: &[u128],
    universe: u128,
    budget: SearchBudget,
    pruning: Pruning,
) -> (Verdict<Vec<usize>>, u64) {
    let size = universe.count_ones();
    if size == 0 {
        return (Verdict::Yes(Vec::new()), 0);
    }
    if size == 1 {
        return (Verdict::Yes(vec![universe.trailing_zeros() as usize]), 0);
    }
    if !is_connected_mask(adj, universe) {
        return (Verdict::No, 0);
    }
    let pendant: Vec<usize> = bits(universe)
        .filter(|&v| (adj[v] & universe).count_ones() == 1)
        .collect();
    if pendant.len() > 2 {
        return (Verdict::No, 0);
    }
    // A pendant vertex must be an endpoint, so starting there loses nothing.
    let starts: Vec<usize> = if pendant.is_empty() {
        bits(universe).collect()
    } else {
        vec![pendant[0]]
    };
    let mut spent = 0;
    let mut refuted = 0u128;
    for s in starts {
        let mut search = PathSearch::new(adj, universe, pruning)
            .forbid_end(refuted)
            .budget(budget, spent);
        let r = search.run(s);
        spent += search.nodes;
        match r {
            Verdict::No => refuted |= bit(s),
            other => return (other, spent),
        }
    }
    (Verdict::No, spent)
}

pub(crate) fn ham_path_between_in(
    adj: &[u128],
    universe: u128,
    a: usize,
    b: usize,
    budget: SearchBudget,
    pruning: Pruning,
) -> (Verdict<Vec<usize>>, u64) {
    if universe & bit(a) == 0 || universe & bit(b) == 0 {
        return (Verdict::No, 0);
    }
    if !is_connected_mask(adj, universe) {
        return (Verdict::No, 0);
    }
    let mut search = PathSearch::new(adj, universe, pruning)
        .end_at(b)
        .budget(budget, 0);
    let r = search.run(a);
    (r, search.nodes)
}

/// Two vertex-disjoint paths `a..b` and `c..d` partitioning `universe`.
pub(crate) fn two_paths_in(
    adj: &[u128],
    universe: u128,
    (a, b): (usize, usize),
    (c, d): (usize, usize),
    budget: SearchBudget,
) -> (Verdict<(Vec<usize>, Vec<usize>)>, u64) {
    if [a, b, c, d].iter().any(|&v| universe & bit(v) == 0) {
        return (Verdict::No, 0);
    }
    struct Outer<'a> {
        adj: &'a [u128],
        universe: u128,
        b: usize,
        c: usize,
        d: usize,
        budget: SearchBudget,
        nodes: u64,
        path: Vec<usize>,
    }
    impl Outer<'_> {
        fn dfs(&mut self, cur: usize, visited: u128) -> Verdict<Vec<usize>> {
            self.nodes += 1;
            if self.budget.max_nodes.is_some_and(|m| self.nodes > m) {
                return Verdict::Indeterminate;
            }
            let rest = self.universe & !visited;
            if cur == self.b {
                // Second path must span exactly what is left.
                let (r, spent) = ham_path_between_in(
                    self.adj,
                    rest,
                    self.c,
                    self.d,
                    SearchBudget {
                        max_nodes: self.budget.max_nodes.map(|m| m.saturating_sub(self.nodes)),
                    },
                    Pruning::default(),
                );
                self.nodes += spent;
                return r;
            }
            // The second path joins c to d without using b, and the first
            // path still has to reach b without touching c or d.
            if reach(self.adj, bit(self.c), rest & !bit(self.b)) & bit(self.d) == 0 {
                return Verdict::No;
            }
            let open = (rest | bit(cur)) & !bit(self.c) & !bit(self.d);
            if reach(self.adj, bit(cur), open) & bit(self.b) == 0 {
                return Verdict::No;
            }
            for v in bits(self.adj[cur] & rest & !bit(self.c) & !bit(self.d)) {
                self.path.push(v);
                match self.dfs(v, visited | bit(v)) {
                    Verdict::No => {
                        self.path.pop();
                    }
                    other => return other,
                }
            }
            Verdict::No
        }
    }
    let mut outer = Outer {
        adj,
        universe,
        b,
        c,
        d,
        budget,
        nodes: 0,
        path: vec![a],
    };
    let r = outer.dfs(a, bit(a));
    let first = std::mem::take(&mut outer.path);
    (r.map(|second| (first, second)), outer.nodes)
}

/// Does `g` have a hamiltonian path? Disconnected graphs answer No at once.
pub fn has_ham_path(g: &Graph, budget: SearchBudget) -> Result<Verdict<PathWitness>, SearchError> {
    has_ham_path_with(g, budget, Pruning::default())
}

pub fn has_ham_path_with(
    g: &Graph,
    budget: SearchBudget,
    pruning: Pruning,
) -> Result<Verdict<PathWitness>, SearchError> {
    let adj = masks(g)?;
    Ok(ham_path_in(&adj, full(g.n()), budget, pruning)
        .0
        .map(PathWitness::new))
}

/// Hamiltonian path whose first vertex is `start`.
pub fn has_ham_path_from(
    g: &Graph,
    start: usize,
    budget: SearchBudget,
) -> Result<Verdict<PathWitness>, SearchError> {
    has_ham_path_from_with(g, start, budget, Pruning::default())
}

pub fn has_ham_path_from_with(
    g: &Graph,
    start: usize,
    budget: SearchBudget,
    pruning: Pruning,
) -> Result<Verdict<PathWitness>, SearchError> {
    check_vertex(g, start)?;
    let adj = masks(g)?;
    if !is_connected(g) {
        return Ok(Verdict::No);
    }
    let mut search = PathSearch::new(&adj, full(g.n()), pruning).budget(budget, 0);
    Ok(search.run(start).map(PathWitness::new))
}

/// Hamiltonian path with endpoints `a` and `b` (a good pair).
pub fn has_ham_path_between(
    g: &Graph,
    a: usize,
    b: usize,
    budget: SearchBudget,
) -> Result<Verdict<PathWitness>, SearchError> {
    has_ham_path_between_with(g, a, b, budget, Pruning::default())
}

pub fn has_ham_path_between_with(
    g: &Graph,
    a: usize,
    b: usize,
    budget: SearchBudget,
    pruning: Pruning,
) -> Result<Verdict<PathWitness>, SearchError> {
    check_vertex(g, a)?;
    check_vertex(g, b)?;
    if a == b {
        return Err(SearchError::EndpointsNotDistinct(vec![a, b]));
    }
    let adj = masks(g)?;
    Ok(
        ham_path_between_in(&adj, full(g.n()), a, b, budget, pruning)
            .0
            .map(PathWitness::new),
    )
}

/// Hamiltonian cycle; the witness lists each vertex once, closing edge implied.
pub fn has_ham_cycle(g: &Graph, budget: SearchBudget) -> Result<Verdict<PathWitness>, SearchError> {
    has_ham_cycle_with(g, budget, Pruning::default())
}

pub fn has_ham_cycle_with(
    g: &Graph,
    budget: SearchBudget,
    pruning: Pruning,
) -> Result<Verdict<PathWitness>, SearchError> {
    if g.n() < 3 {
        return Err(SearchError::TooSmallForCycle(g.n()));
    }
    let adj = masks(g)?;
    Ok(ham_cycle_in(&adj, full(g.n()), 0, 0, budget, pruning)
        .0
        .map(PathWitness::new))
}

/// Hamiltonian cycle over `universe` started at `start`; `twins` is a set of
/// mutually interchangeable vertices visited in ascending order.
pub(crate) fn ham_cycle_in(
    adj: &[u128],
    universe: u128,
    start: usize,
    twins: u128,
    budget: SearchBudget,
    pruning: Pruning,
) -> (Verdict<Vec<usize>>, u64) {
    if !is_connected_mask(adj, universe) {
        return (Verdict::No, 0);
    }
    if bits(universe).any(|v| (adj[v] & universe).count_ones() < 2) {
        return (Verdict::No, 0);
    }
    let mut search = PathSearch::new(adj, universe, pruning)
        .closing(start)
        .twins(twins & !bit(start))
        .budget(budget, 0);
    let r = search.run(start);
    (r, search.nodes)
}

/// Two vertex-disjoint paths, one between each endpoint pair, covering
/// every vertex (a good pair of pairs).
pub fn has_spanning_two_paths(
    g: &Graph,
    p1: (usize, usize),
    p2: (usize, usize),
    budget: SearchBudget,
) -> Result<Verdict<(PathWitness, PathWitness)>, SearchError> {
    let ends = [p1.0, p1.1, p2.0, p2.1];
    for &v in &ends {
        check_vertex(g, v)?;
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if ends[i] == ends[j] {
                return Err(SearchError::EndpointsNotDistinct(ends.to_vec()));
            }
        }
    }
    let adj = masks(g)?;
    Ok(two_paths_in(&adj, full(g.n()), p1, p2, budget)
        .0
        .map(|(a, b)| (PathWitness::new(a), PathWitness::new(b))))
}

/// Which of the three J-cell conditions hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JCellReport {
    pub is_jcell: bool,
    /// (a,d) and (b,c) are good.
    pub condition1: bool,
    /// None of the six listed pairs or pairs of pairs are good.
    pub condition2: bool,
    /// Every vertex-deleted subgraph has a good listed pair.
    pub condition3: bool,
    /// Human-readable reason for the first failing condition.
    pub failure: Option<String>,
}

enum Listed {
    Pair(usize, usize),
    PairOfPairs((usize, usize), (usize, usize)),
}

fn listed_good(adj: &[u128], universe: u128, item: &Listed) -> bool {
    match *item {
        Listed::Pair(x, y) => ham_path_between_in(
            adj,
            universe,
            x,
            y,
            SearchBudget::UNLIMITED,
            Pruning::default(),
        )
        .0
        .is_yes(),
        Listed::PairOfPairs(p, q) => two_paths_in(adj, universe, p, q, SearchBudget::UNLIMITED)
            .0
            .is_yes(),
    }
}

/// Checks whether `(h, a, b, c, d)` is a J-cell.
///
/// In the vertex-deleted checks a listed item whose endpoint is the deleted
/// vertex is unavailable and skipped.
pub fn is_jcell(
    h: &Graph,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
) -> Result<JCellReport, SearchError> {
    let ends = [a, b, c, d];
    for &v in &ends {
        check_vertex(h, v)?;
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if ends[i] == ends[j] {
                return Err(SearchError::EndpointsNotDistinct(ends.to_vec()));
            }
        }
    }
    let adj = masks(h)?;
    let all = full(h.n());
    let listed = [
        Listed::Pair(a, b),
        Listed::Pair(c, d),
        Listed::Pair(a, c),
        Listed::Pair(b, d),
        Listed::PairOfPairs((a, b), (c, d)),
        Listed::PairOfPairs((a, c), (b, d)),
    ];
    let names = [
        "(a,b)",
        "(c,d)",
        "(a,c)",
        "(b,d)",
        "((a,b),(c,d))",
        "((a,c),(b,d))",
    ];

    let mut report = JCellReport {
        is_jcell: false,
        condition1: true,
        condition2: true,
        condition3: true,
        failure: None,
    };
    for (x, y, name) in [(a, d, "(a,d)"), (b, c, "(b,c)")] {
        if !listed_good(&adj, all, &Listed::Pair(x, y)) {
            report.condition1 = false;
            report
                .failure
                .get_or_insert_with(|| format!("condition 1: pair {name} is not good"));
        }
    }
    for (item, name) in listed.iter().zip(names) {
        if listed_good(&adj, all, item) {
            report.condition2 = false;
            report
                .failure
                .get_or_insert_with(|| format!("condition 2: {name} is good"));
        }
    }
    for v in 0..h.n() {
        let universe = all & !bit(v);
        let found = listed.iter().any(|item| {
            let touches = match *item {
                Listed::Pair(x, y) => x == v || y == v,
                Listed::PairOfPairs((x, y), (z, w)) => [x, y, z, w].contains(&v),
            };
            !touches && listed_good(&adj, universe, item)
        });
        if !found {
            report.condition3 = false;
            report.failure.get_or_insert_with(|| {
                format!("condition 3: no listed item is good after deleting vertex {v}")
            });
            break;
        }
    }
    report.is_jcell = report.condition1 && report.condition2 && report.condition3;
    Ok(report)
}
