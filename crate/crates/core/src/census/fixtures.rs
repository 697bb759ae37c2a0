//! Reference graphs shipped with the crate, each with the properties it is
//! known to have.

use std::path::Path;

use serde::Serialize;

use crate::edgelist::parse_edge_list;
use crate::error::DataError;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FixtureFamily {
    /// Non-traceable cubic graphs on 28 vertices.
    Nontraceable28,
    /// Non-traceable 3-connected cubic graphs on 30 vertices.
    Nontraceable30,
    /// Traceable graphs with degrees in {2,3} and no hamiltonian path from
    /// a degree-2 vertex.
    NoDegree2Start,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fixture {
    pub id: &'static str,
    pub family: FixtureFamily,
    pub file: &'static str,
    pub n: usize,
    pub connectivity: usize,
    pub traceable: bool,
    pub ml: usize,
    #[serde(skip)]
    text: &'static str,
}

impl Fixture {
    /// The embedded copy.
    pub fn graph(&self) -> Result<Graph, DataError> {
        parse_edge_list(self.text, self.file)
    }

    /// The copy in `dir`, read from disk.
    pub fn graph_from_dir(&self, dir: &Path) -> Result<Graph, DataError> {
        let path = dir.join(self.file);
        let text = std::fs::read_to_string(&path)
            .map_err(|_| DataError::Missing(path.display().to_string()))?;
        parse_edge_list(&text, &path.display().to_string())
    }
}

macro_rules! fixture {
    ($id:literal, $family:ident, $n:literal, $conn:literal, $traceable:literal, $ml:literal) => {
        Fixture {
            id: $id,
            family: FixtureFamily::$family,
            file: concat!($id, ".txt"),
            n: $n,
            connectivity: $conn,
            traceable: $traceable,
            ml: $ml,
            text: include_str!(concat!("../../data/fixtures/", $id, ".txt")),
        }
    };
}

static FIXTURES: [Fixture; 23] = [
    fixture!("nontraceable_n28_conn2_1", Nontraceable28, 28, 2, false, 3),
    fixture!("nontraceable_n28_conn2_2", Nontraceable28, 28, 2, false, 3),
    fixture!("nontraceable_n28_conn2_3", Nontraceable28, 28, 2, false, 3),
    fixture!("nontraceable_n28_conn2_4", Nontraceable28, 28, 2, false, 3),
    fixture!("nontraceable_n28_conn2_5", Nontraceable28, 28, 2, false, 3),
    fixture!("nontraceable_n28_conn2_6", Nontraceable28, 28, 2, false, 3),
    fixture!("nontraceable_n28_conn2_7", Nontraceable28, 28, 2, false, 3),
    fixture!("nontraceable_n28_conn2_8", Nontraceable28, 28, 2, false, 3),
    fixture!("nontraceable_n28_conn2_9", Nontraceable28, 28, 2, false, 3),
    fixture!("nontraceable_n28_conn3", Nontraceable28, 28, 3, false, 3),
    fixture!("nontraceable_n30_conn3_1", Nontraceable30, 30, 3, false, 3),
    fixture!("nontraceable_n30_conn3_2", Nontraceable30, 30, 3, false, 3),
    fixture!("nontraceable_n30_conn3_3", Nontraceable30, 30, 3, false, 3),
    fixture!("nontraceable_n30_conn3_4", Nontraceable30, 30, 3, false, 3),
    fixture!("nontraceable_n30_conn3_5", Nontraceable30, 30, 3, false, 3),
    fixture!("nontraceable_n30_conn3_6", Nontraceable30, 30, 3, false, 3),
    fixture!("nontraceable_n30_conn3_7", Nontraceable30, 30, 3, false, 3),
    fixture!("nontraceable_n30_conn3_8", Nontraceable30, 30, 3, false, 3),
    fixture!("nontraceable_n30_conn3_9", Nontraceable30, 30, 3, false, 3),
    fixture!("no_degree2_start_n18_1", NoDegree2Start, 18, 1, true, 2),
    fixture!("no_degree2_start_n18_2", NoDegree2Start, 18, 2, true, 2),
    fixture!("no_degree2_start_n18_3", NoDegree2Start, 18, 2, true, 2),
    fixture!("no_degree2_start_n18_4", NoDegree2Start, 18, 2, true, 2),
];

pub fn fixtures() -> &'static [Fixture] {
    &FIXTURES
}

pub fn fixture(id: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.id == id)
}

pub fn family(f: FixtureFamily) -> impl Iterator<Item = &'static Fixture> {
    FIXTURES.iter().filter(move |x| x.family == f)
}

/// The 3-connected non-traceable graph on 28 vertices.
pub fn order28_conn3() -> &'static Fixture {
    fixture("nontraceable_n28_conn3").expect("embedded")
}

/// Loads every fixture, from `dir` when given, otherwise the embedded copies.
pub fn load_fixtures(dir: Option<&Path>) -> Result<Vec<(&'static Fixture, Graph)>, DataError> {
    FIXTURES
        .iter()
        .map(|f| {
            let g = match dir {
                Some(d) => f.graph_from_dir(d)?,
                None => f.graph()?,
            };
            Ok((f, g))
        })
        .collect()
}
