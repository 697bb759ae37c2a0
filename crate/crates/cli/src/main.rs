use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use minleaf::census::{
    generate_cubic_with, generate_degree23_with, lemma_short_exhaustive, lemma_short_scan, nontraceable_census, verify_artifacts,
    ScanReport,
};
use minleaf::constructions::{cycle_of_edge_deleted_petersen, edge_expansion, jcell_ring, named_graph, substitute_p_star, MultiGraph, NamedGadget};
use minleaf::exact::{min_leaf_number, path_cover_number, ExactError};
use minleaf::graph::vertex_connectivity_capped;
use minleaf::graph6::split_stream;
use minleaf::hamsearch::has_ham_path;
use minleaf::par::{self, Parallelism};
use minleaf::{parse_graph6, write_graph6, Graph, SearchBudget, VertexSet, Verdict};
use serde_json::{json, Value};

const OK: u8 = 0;
const MISMATCH: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "minleaf", version, about = "Minimum leaf spanning trees and path covers of cubic graphs")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Per-graph report: order, connectivity, traceability, optionally ml and mu.
    Analyze {
        /// graph6 file, or - for stdin.
        input: String,
        #[arg(long)]
        ml: bool,
        #[arg(long)]
        mu: bool,
        /// Node cap for each exponential search.
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Counts non-traceable graphs per order and connectivity in a cubic graph6 stream.
    Census {
        input: String,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Looks for graphs satisfying the short-path hypotheses that have no
    /// hamiltonian path from a degree-2 vertex.
    LemmaShort {
        /// Largest order; exhaustive in-repo scan when no file is given.
        #[arg(long)]
        nmax: Option<usize>,
        /// graph6 file, or - for stdin.
        input: Option<String>,
    },
    /// Builds a graph from a named family and writes it as graph6.
    ///
    /// Families: petersen-cycle K | jcell-ring M | substitute H V1,V2,.. |
    /// expand GADGET H | gadget NAME. H is graph6 (or `theta` for expand).
    Construct {
        family: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emits every connected cubic graph on n vertices, one graph6 per line.
    Generate {
        n: usize,
        #[arg(long, default_value_t = 1)]
        min_conn: usize,
        /// Graphs with degrees in {2,3} instead of cubic ones.
        #[arg(long)]
        degree23: bool,
    },
    /// Checks the embedded reference graphs and their constructions.
    VerifyPaper {
        /// Directory of fixture files replacing the embedded copies.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(USAGE, e.to_string())
    }
}

type Run = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = if cli.sequential { Parallelism::Sequential } else { Parallelism::Parallel };
    let code = match par::with_threads(cli.jobs, || run(cli.cmd, mode)) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("minleaf: {msg}");
            code
        }
    };
    ExitCode::from(code)
}

fn run(cmd: Cmd, mode: Parallelism) -> Run {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match cmd {
        Cmd::Analyze { input, ml, mu, max_nodes } => analyze(&mut out, &read_input(&input)?, ml, mu, budget(max_nodes), mode)?,
        Cmd::Census { input, max_nodes } => census(&mut out, &read_input(&input)?, budget(max_nodes), mode)?,
        Cmd::LemmaShort { nmax, input } => lemma_short(&mut out, nmax, input.as_deref(), mode)?,
        Cmd::Construct { family, params, output } => {
            let g6 = write_graph6(&construct(&family, &params)?) + "\n";
            match output {
                Some(p) => std::fs::write(&p, g6).map_err(|e| Failure(USAGE, format!("{}: {e}", p.display())))?,
                None => out.write_all(g6.as_bytes())?,
            }
            OK
        }
        Cmd::Generate { n, min_conn, degree23 } => {
            let mut err = None;
            let mut emit = |g: &Graph| {
                if err.is_none() {
                    err = writeln!(out, "{}", write_graph6(g)).err();
                }
            };
            if degree23 {
                generate_degree23_with(n, mode, &mut emit)?;
            } else {
                generate_cubic_with(n, min_conn, mode, &mut emit)?;
            }
            if let Some(e) = err {
                return Err(e.into());
            }
            OK
        }
        Cmd::VerifyPaper { fixtures } => verify(&mut out, fixtures.as_deref(), mode)?,
    };
    out.flush()?;
    Ok(code)
}

fn budget(max_nodes: Option<u64>) -> SearchBudget {
    max_nodes.map_or(SearchBudget::UNLIMITED, SearchBudget::nodes)
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut s)?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Failure(USAGE, format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn emit(out: &mut impl Write, v: &Value) -> io::Result<()> {
    writeln!(out, "{v}")
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn verdict_json<W>(v: &Verdict<W>) -> Value {
    match v {
        Verdict::Yes(_) => json!(true),
        Verdict::No => json!(false),
        Verdict::Indeterminate => Value::Null,
    }
}

/// Value or bracket for an exact quantity; errors other than budget
/// exhaustion become an `error` string.
fn exact_json(r: Result<usize, ExactError>) -> Value {
    match r {
        Ok(v) => json!(v),
        Err(ExactError::Indeterminate { lower, upper, .. }) => json!({ "lower": lower, "upper": upper }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn analyze_one(g: &Graph, ml: bool, mu: bool, budget: SearchBudget) -> Value {
    let mut rec = json!({ "n": g.n(), "m": g.m() });
    let mut timings = json!({});
    let t = Instant::now();
    rec["connectivity"] = json!(vertex_connectivity_capped(g, 3));
    timings["connectivity"] = json!(ms(t));
    let t = Instant::now();
    rec["traceable"] = match has_ham_path(g, budget) {
        Ok(v) => verdict_json(&v),
        Err(e) => json!({ "error": e.to_string() }),
    };
    timings["traceable"] = json!(ms(t));
    if ml {
        let t = Instant::now();
        rec["ml"] = exact_json(min_leaf_number(g, budget).map(|r| r.ml));
        timings["ml"] = json!(ms(t));
    }
    if mu {
        let t = Instant::now();
        rec["mu"] = exact_json(path_cover_number(g, budget).map(|r| r.mu));
        timings["mu"] = json!(ms(t));
    }
    rec["timings_ms"] = timings;
    rec
}

fn analyze(out: &mut impl Write, text: &str, ml: bool, mu: bool, budget: SearchBudget, mode: Parallelism) -> Run {
    let lines = split_stream(text);
    let recs = par::map(mode, &lines, |l| match parse_graph6(l.text.as_bytes()) {
        Ok(g) => {
            let mut r = analyze_one(&g, ml, mu, budget);
            r["graph6"] = json!(l.text);
            Ok(r)
        }
        Err(e) => Err(json!({ "error": e.to_string() })),
    });
    let mut code = OK;
    for (l, r) in lines.iter().zip(recs) {
        let mut r = r.unwrap_or_else(|e| {
            code = USAGE;
            e
        });
        r["id"] = json!(l.line);
        emit(out, &r)?;
    }
    Ok(code)
}

fn census(out: &mut impl Write, text: &str, budget: SearchBudget, mode: Parallelism) -> Run {
    let c = nontraceable_census(&split_stream(text), budget, mode);
    for r in &c.records {
        let mut v = serde_json::to_value(r)?;
        v["two_connected"] = json!(r.two_connected());
        emit(out, &v)?;
    }
    for d in &c.diagnostics {
        eprintln!("line {}: {}", d.line, d.message);
    }
    Ok(if c.diagnostics.is_empty() { OK } else { USAGE })
}

fn lemma_short(out: &mut impl Write, nmax: Option<usize>, input: Option<&str>, mode: Parallelism) -> Run {
    let report: ScanReport = match input {
        None => {
            let nmax = nmax.unwrap_or(10);
            if !(3..=13).contains(&nmax) {
                return Err(Failure(USAGE, format!("exhaustive scan needs 3 <= nmax <= 13, got {nmax}")));
            }
            lemma_short_exhaustive(nmax, mode)
        }
        Some(path) => {
            let mut graphs = Vec::new();
            for l in split_stream(&read_input(path)?) {
                let g = parse_graph6(l.text.as_bytes()).map_err(|e| Failure(USAGE, format!("line {}: {e}", l.line)))?;
                graphs.push(g);
            }
            lemma_short_scan(&graphs, nmax.unwrap_or(usize::MAX), SearchBudget::UNLIMITED, mode)
        }
    };
    emit(out, &serde_json::to_value(&report)?)?;
    Ok(if report.counterexamples.is_empty() && report.indeterminate.is_empty() { OK } else { MISMATCH })
}

fn construct(family: &str, params: &[String]) -> Result<Graph, Failure> {
    let arity = |k: usize| {
        if params.len() == k {
            Ok(())
        } else {
            Err(Failure(USAGE, format!("{family} takes {k} parameter(s), got {}", params.len())))
        }
    };
    let int = |s: &str| s.parse::<usize>().map_err(|_| Failure(USAGE, format!("not a number: {s}")));
    let g6 = |s: &str| parse_graph6(s.as_bytes()).map_err(Failure::from);
    let g = match family {
        "petersen-cycle" => {
            arity(1)?;
            cycle_of_edge_deleted_petersen(int(&params[0])?)?
        }
        "jcell-ring" => {
            arity(1)?;
            jcell_ring(int(&params[0])?)?
        }
        "substitute" => {
            arity(2)?;
            let h = g6(&params[0])?;
            let vs = params[1].split(',').map(int).collect::<Result<Vec<_>, _>>()?;
            substitute_p_star(&h, &VertexSet::from_vertices(h.n(), vs)?)?
        }
        "expand" => {
            arity(2)?;
            let gadget = NamedGadget::from_name(&params[0])?;
            let h = if params[1] == "theta" { MultiGraph::theta() } else { MultiGraph::from(&g6(&params[1])?) };
            edge_expansion(&h, gadget)?
        }
        "gadget" => {
            arity(1)?;
            named_graph(&params[0])?.0
        }
        other => return Err(Failure(USAGE, format!("unknown family {other}"))),
    };
    Ok(g)
}

fn verify(out: &mut impl Write, dir: Option<&Path>, mode: Parallelism) -> Run {
    let report = match verify_artifacts(dir, mode) {
        Ok(r) => r,
        Err(e) => {
            emit(out, &json!({ "name": "fixtures", "passed": false, "detail": e.to_string() }))?;
            return Ok(MISMATCH);
        }
    };
    for c in &report.checks {
        emit(out, &serde_json::to_value(c)?)?;
    }
    let failed = report.failures().count();
    emit(out, &json!({ "summary": { "checks": report.checks.len(), "failed": failed } }))?;
    Ok(if failed == 0 { OK } else { MISMATCH })
}
