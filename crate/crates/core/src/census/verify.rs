//! Re-derives the stated properties of every reference graph and the
//! constructions that should reproduce them.

use std::path::Path;

use serde::Serialize;

use super::fixtures::{load_fixtures, Fixture, FixtureFamily};
use super::lemma::{ham_path_from_degree2, lemma_short_hypotheses};
use crate::constructions::{edge_expansion, substitute_p_star, MultiGraph, NamedGadget};
use crate::error::DataError;
use crate::exact::min_leaf_number;
use crate::graph::{vertex_connectivity_capped, Graph, VertexSet};
use crate::hamsearch::{has_ham_path, SearchBudget};
use crate::iso::are_isomorphic;
use crate::par::{self, Parallelism};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtifactCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtifactReport {
    pub checks: Vec<ArtifactCheck>,
}

impl ArtifactReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ArtifactCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> ArtifactCheck {
    ArtifactCheck {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn fixture_checks(f: &Fixture, g: &Graph) -> Vec<ArtifactCheck> {
    let mut out = vec![check(
        format!("{}: order", f.id),
        g.n() == f.n,
        format!("expected {}, found {}", f.n, g.n()),
    )];
    let conn = vertex_connectivity_capped(g, 3);
    out.push(check(
        format!("{}: connectivity", f.id),
        conn == f.connectivity,
        format!("expected {}, found {conn}", f.connectivity),
    ));
    let traceable = match has_ham_path(g, SearchBudget::UNLIMITED) {
        Ok(v) => v.decided(),
        Err(_) => None,
    };
    out.push(check(
        format!("{}: traceable", f.id),
        traceable == Some(f.traceable),
        format!("expected {}, found {traceable:?}", f.traceable),
    ));
    let ml = min_leaf_number(g, SearchBudget::UNLIMITED).map(|r| r.ml);
    out.push(check(
        format!("{}: ml", f.id),
        ml == Ok(f.ml),
        format!("expected {}, found {ml:?}", f.ml),
    ));
    if f.family == FixtureFamily::NoDegree2Start {
        let h = lemma_short_hypotheses(g);
        out.push(check(
            format!("{}: lemma hypotheses", f.id),
            h.holds,
            format!("{:?}", h.failed),
        ));
        let from2 = ham_path_from_degree2(g, SearchBudget::UNLIMITED);
        out.push(check(
            format!("{}: no hamiltonian path from a degree-2 vertex", f.id),
            from2.is_no(),
            format!("found {:?}", from2.decided()),
        ));
    }
    out
}

fn pairwise_distinct(name: &str, graphs: &[(&Fixture, &Graph)]) -> ArtifactCheck {
    let mut clashes = Vec::new();
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            if are_isomorphic(graphs[i].1, graphs[j].1) {
                clashes.push(format!("{} ~ {}", graphs[i].0.id, graphs[j].0.id));
            }
        }
    }
    let detail = if clashes.is_empty() {
        format!("{} graphs, no two isomorphic", graphs.len())
    } else {
        clashes.join(", ")
    };
    check(name, clashes.is_empty(), detail)
}

fn construction_checks(fixtures: &[(&'static Fixture, Graph)]) -> Vec<ArtifactCheck> {
    let mut out = Vec::new();
    let k4 = Graph::complete(4);
    let built = substitute_p_star(
        &k4,
        &VertexSet::from_vertices(4, [1, 2, 3]).expect("in range"),
    )
    .expect("K4 is cubic");
    match fixtures
        .iter()
        .find(|(f, _)| f.id == "nontraceable_n28_conn3")
    {
        Some((_, g)) => out.push(check(
            "vertex-deleted Petersen substitution into K4 matches the 3-connected order-28 graph",
            are_isomorphic(&built, g),
            format!("construction has {} vertices", built.n()),
        )),
        None => out.push(check(
            "order-28 3-connected fixture present",
            false,
            "missing",
        )),
    }
    for (base, gadget, n, ml) in [
        (MultiGraph::from(&k4), NamedGadget::K4MinusEdge, 28, 3),
        (MultiGraph::theta(), NamedGadget::K4MinusEdge, 14, 2),
    ] {
        let g = edge_expansion(&base, gadget).expect("cubic base");
        let found = min_leaf_number(&g, SearchBudget::UNLIMITED).map(|r| r.ml);
        out.push(check(
            format!(
                "{}-expansion of a {}-vertex base: n = {n}, ml = {ml}",
                gadget.name(),
                base.n()
            ),
            g.n() == n && found == Ok(ml),
            format!("n = {}, ml = {found:?}", g.n()),
        ));
    }
    out
}

/// Runs every check; `dir` overrides the embedded fixture copies.
pub fn verify_artifacts(
    dir: Option<&Path>,
    mode: Parallelism,
) -> Result<ArtifactReport, DataError> {
    let fixtures = load_fixtures(dir)?;
    let mut checks: Vec<ArtifactCheck> = par::map(mode, &fixtures, |(f, g)| fixture_checks(f, g))
        .into_iter()
        .flatten()
        .collect();
    let of = |fam: FixtureFamily| -> Vec<(&Fixture, &Graph)> {
        fixtures
            .iter()
            .filter(|(f, _)| f.family == fam)
            .map(|(f, g)| (*f, g))
            .collect()
    };
    checks.push(pairwise_distinct(
        "order-28 non-traceable graphs pairwise non-isomorphic",
        &of(FixtureFamily::Nontraceable28),
    ));
    checks.push(pairwise_distinct(
        "order-30 non-traceable graphs pairwise non-isomorphic",
        &of(FixtureFamily::Nontraceable30),
    ));
    checks.push(pairwise_distinct(
        "order-18 lemma-boundary graphs pairwise non-isomorphic",
        &of(FixtureFamily::NoDegree2Start),
    ));
    checks.extend(construction_checks(&fixtures));
    Ok(ArtifactReport { checks })
}
