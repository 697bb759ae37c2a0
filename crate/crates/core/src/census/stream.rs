//! Non-traceable census over graph streams, sharded by line ranges and
//! merged by addition.

use std::collections::BTreeMap;

use serde::Serialize;

use super::generate::generate_cubic_with;
use crate::graph::{degree_profile, is_connected, vertex_connectivity_capped, Graph};
use crate::graph6::{parse_graph6, Graph6Line};
use crate::hamsearch::{has_ham_path, SearchBudget, Verdict};
use crate::par::{self, Parallelism};

/// Non-traceable graphs of one order, split by vertex connectivity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub n: usize,
    pub scanned: u64,
    /// Non-traceable with a cut vertex.
    pub conn1: u64,
    pub conn2: u64,
    pub conn3: u64,
    pub indeterminate: u64,
}

impl CensusRecord {
    /// Non-traceable 2-connected graphs.
    pub fn two_connected(&self) -> u64 {
        self.conn2 + self.conn3
    }

    fn add(&mut self, o: &CensusRecord) {
        self.scanned += o.scanned;
        self.conn1 += o.conn1;
        self.conn2 += o.conn2;
        self.conn3 += o.conn3;
        self.indeterminate += o.indeterminate;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineDiagnostic {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CensusOutput {
    /// One record per order, ascending.
    pub records: Vec<CensusRecord>,
    pub diagnostics: Vec<LineDiagnostic>,
}

/// Lines per shard.
const SHARD: usize = 256;

fn classify(g: &Graph, budget: SearchBudget) -> CensusRecord {
    let mut r = CensusRecord {
        n: g.n(),
        scanned: 1,
        ..Default::default()
    };
    match has_ham_path(g, budget).expect("cubic census graphs fit the search") {
        Verdict::Yes(_) => {}
        Verdict::Indeterminate => r.indeterminate = 1,
        Verdict::No => match vertex_connectivity_capped(g, 3) {
            3 => r.conn3 = 1,
            2 => r.conn2 = 1,
            _ => r.conn1 = 1,
        },
    }
    r
}

fn merge(
    mut a: BTreeMap<usize, CensusRecord>,
    b: BTreeMap<usize, CensusRecord>,
) -> BTreeMap<usize, CensusRecord> {
    for (n, r) in b {
        a.entry(n)
            .or_insert_with(|| CensusRecord {
                n,
                ..Default::default()
            })
            .add(&r);
    }
    a
}

fn check_entry(g: &Graph) -> Result<(), String> {
    if g.n() > 128 {
        return Err(format!("order {} exceeds the search limit of 128", g.n()));
    }
    if !degree_profile(g).is_cubic {
        return Err("graph is not cubic".into());
    }
    if !is_connected(g) {
        return Err("graph is disconnected".into());
    }
    Ok(())
}

/// Counts non-traceable graphs per order in a graph6 stream. Entries that
/// do not parse, are not cubic or are disconnected are reported per line
/// and left out of the counts.
pub fn nontraceable_census(
    lines: &[Graph6Line],
    budget: SearchBudget,
    mode: Parallelism,
) -> CensusOutput {
    let shards: Vec<&[Graph6Line]> = lines.chunks(SHARD).collect();
    let (records, mut diagnostics) = par::map_reduce(
        mode,
        &shards,
        || (BTreeMap::new(), Vec::new()),
        |shard| {
            let mut recs = BTreeMap::new();
            let mut diags = Vec::new();
            for l in shard.iter() {
                let g = match parse_graph6(l.text.as_bytes()) {
                    Ok(g) => g,
                    Err(e) => {
                        diags.push(LineDiagnostic {
                            line: l.line,
                            message: e.to_string(),
                        });
                        continue;
                    }
                };
                if let Err(message) = check_entry(&g) {
                    diags.push(LineDiagnostic {
                        line: l.line,
                        message,
                    });
                    continue;
                }
                let r = classify(&g, budget);
                recs = merge(recs, BTreeMap::from([(r.n, r)]));
            }
            (recs, diags)
        },
        |(ra, mut da), (rb, db)| {
            da.extend(db);
            (merge(ra, rb), da)
        },
    );
    diagnostics.sort_by_key(|d| d.line);
    CensusOutput {
        records: records.into_values().collect(),
        diagnostics,
    }
}

/// Census of graphs already in memory (no diagnostics: callers pass
/// connected cubic graphs).
pub fn census_graphs(
    graphs: &[Graph],
    budget: SearchBudget,
    mode: Parallelism,
) -> Vec<CensusRecord> {
    let out = par::map_reduce(
        mode,
        graphs,
        BTreeMap::new,
        |g| {
            let r = classify(g, budget);
            BTreeMap::from([(r.n, r)])
        },
        merge,
    );
    out.into_values().collect()
}

/// Generates every connected cubic graph of each even order in `4..=nmax`
/// and counts the non-traceable ones.
pub fn census_generated(nmax: usize, mode: Parallelism) -> Vec<CensusRecord> {
    let mut records = Vec::new();
    for n in (4..=nmax).step_by(2) {
        let mut total = CensusRecord {
            n,
            ..Default::default()
        };
        let mut buf = Vec::new();
        let flush = |buf: &mut Vec<Graph>, total: &mut CensusRecord| {
            for r in census_graphs(buf, SearchBudget::UNLIMITED, mode) {
                total.add(&r);
            }
            buf.clear();
        };
        generate_cubic_with(n, 1, mode, |g| {
            buf.push(g.clone());
            if buf.len() == 4096 {
                flush(&mut buf, &mut total);
            }
        })
        .expect("order within generator range");
        flush(&mut buf, &mut total);
        records.push(total);
    }
    records
}
