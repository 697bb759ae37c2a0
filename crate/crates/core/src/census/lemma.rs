//! The short-path lemma: a connected traceable graph with degrees in {2,3},
//! at least two degree-2 vertices, and a degree-2 vertex in every component
//! left by deleting any cut vertex, has a hamiltonian path starting at a
//! degree-2 vertex. The scan looks for graphs that break this.

use serde::Serialize;

use super::generate::generate_degree23_with;
use crate::graph::{components_excluding, cut_vertices, is_connected, Graph, VertexSet};
use crate::hamsearch::{has_ham_path, has_ham_path_from, SearchBudget, Verdict};
use crate::par::{self, Parallelism};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub holds: bool,
    /// First clause that failed.
    pub failed: Option<&'static str>,
}

impl HypothesisCheck {
    fn fail(clause: &'static str) -> Self {
        HypothesisCheck {
            holds: false,
            failed: Some(clause),
        }
    }
}

fn structural(g: &Graph) -> Option<&'static str> {
    if g.n() == 0 || !is_connected(g) {
        return Some("connected");
    }
    if (0..g.n()).any(|v| !(2..=3).contains(&g.degree(v))) {
        return Some("degrees in {2,3}");
    }
    if (0..g.n()).filter(|&v| g.degree(v) == 2).count() < 2 {
        return Some("at least two degree-2 vertices");
    }
    for c in cut_vertices(g) {
        let gone = VertexSet::from_vertices(g.n(), [c]).expect("cut vertex in range");
        if components_excluding(g, &gone)
            .iter()
            .any(|comp| comp.iter().all(|&v| g.degree(v) != 2))
        {
            return Some("degree-2 vertex in every component at each cut vertex");
        }
    }
    None
}

/// Evaluates the hypotheses, traceability last. `None` when the
/// traceability search ran out of budget.
fn hypotheses_with(g: &Graph, budget: SearchBudget) -> Option<HypothesisCheck> {
    if let Some(clause) = structural(g) {
        return Some(HypothesisCheck::fail(clause));
    }
    match has_ham_path(g, budget).expect("graph size checked by caller") {
        Verdict::Yes(_) => Some(HypothesisCheck {
            holds: true,
            failed: None,
        }),
        Verdict::No => Some(HypothesisCheck::fail("traceable")),
        Verdict::Indeterminate => None,
    }
}

pub fn lemma_short_hypotheses(g: &Graph) -> HypothesisCheck {
    if g.n() > 128 {
        return HypothesisCheck::fail("at most 128 vertices");
    }
    hypotheses_with(g, SearchBudget::UNLIMITED).expect("unlimited search decides")
}

/// Some hamiltonian path starts at a degree-2 vertex?
pub fn ham_path_from_degree2(g: &Graph, budget: SearchBudget) -> Verdict<Vec<usize>> {
    let mut undecided = false;
    for v in (0..g.n()).filter(|&v| g.degree(v) == 2) {
        match has_ham_path_from(g, v, budget).expect("vertex in range") {
            Verdict::Yes(w) => return Verdict::Yes(w.vertices),
            Verdict::No => {}
            Verdict::Indeterminate => undecided = true,
        }
    }
    if undecided {
        Verdict::Indeterminate
    } else {
        Verdict::No
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanHit {
    /// Position in the scanned sequence.
    pub index: usize,
    pub graph6: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub scanned: u64,
    /// Graphs above the order limit, not examined.
    pub skipped: u64,
    pub passed_hypotheses: u64,
    pub counterexamples: Vec<ScanHit>,
    /// Graphs whose verdict the budget could not settle.
    pub indeterminate: Vec<ScanHit>,
}

impl ScanReport {
    fn merge(mut self, other: ScanReport) -> ScanReport {
        self.scanned += other.scanned;
        self.skipped += other.skipped;
        self.passed_hypotheses += other.passed_hypotheses;
        self.counterexamples.extend(other.counterexamples);
        self.indeterminate.extend(other.indeterminate);
        self
    }
}

enum Outcome {
    Skipped,
    Excluded,
    Holds,
    Counterexample,
    Undecided,
}

fn examine(g: &Graph, nmax: usize, budget: SearchBudget) -> Outcome {
    if g.n() > nmax || g.n() > 128 {
        return Outcome::Skipped;
    }
    match hypotheses_with(g, budget) {
        None => Outcome::Undecided,
        Some(h) if !h.holds => Outcome::Excluded,
        Some(_) => match ham_path_from_degree2(g, budget) {
            Verdict::Yes(_) => Outcome::Holds,
            Verdict::No => Outcome::Counterexample,
            Verdict::Indeterminate => Outcome::Undecided,
        },
    }
}

/// Returns every graph with at most `nmax` vertices that satisfies the
/// hypotheses but has no hamiltonian path from a degree-2 vertex. Results
/// are in input order whatever the parallelism.
pub fn lemma_short_scan(
    graphs: &[Graph],
    nmax: usize,
    budget: SearchBudget,
    mode: Parallelism,
) -> ScanReport {
    let indexed: Vec<(usize, &Graph)> = graphs.iter().enumerate().collect();
    let outcomes = par::map(mode, &indexed, |&(i, g)| (i, examine(g, nmax, budget)));
    let mut report = ScanReport::default();
    for (i, o) in outcomes {
        let hit = || ScanHit {
            index: i,
            graph6: crate::write_graph6(&graphs[i]),
        };
        match o {
            Outcome::Skipped => {
                report.skipped += 1;
                continue;
            }
            Outcome::Excluded => {}
            Outcome::Holds => report.passed_hypotheses += 1,
            Outcome::Counterexample => {
                report.passed_hypotheses += 1;
                report.counterexamples.push(hit());
            }
            Outcome::Undecided => report.indeterminate.push(hit()),
        }
        report.scanned += 1;
    }
    report
}

/// Scans every connected graph with degrees in {2,3} on 3..=`nmax`
/// vertices, as produced by the in-repo generator. Hit indices count from
/// the start of the whole run.
pub fn lemma_short_exhaustive(nmax: usize, mode: Parallelism) -> ScanReport {
    let mut total = ScanReport::default();
    let mut offset = 0;
    for n in 3..=nmax {
        let mut graphs = Vec::new();
        generate_degree23_with(n, mode, |g| graphs.push(g.clone()))
            .expect("order within generator range");
        let mut r = lemma_short_scan(&graphs, nmax, SearchBudget::UNLIMITED, mode);
        for h in r
            .counterexamples
            .iter_mut()
            .chain(r.indeterminate.iter_mut())
        {
            h.index += offset;
        }
        offset += graphs.len();
        total = total.merge(r);
    }
    total
}
