//! Deterministic gadget constructions.
//!
//! Gadgets ship as edge-list files. Their attach vertices are the vertices
//! of degree below 3, in ascending order. Builders place the base graph's
//! vertices first and then one block per gadget copy, so equal inputs give
//! byte-identical outputs.

use serde::Serialize;

use crate::edgelist::parse_edge_list;
use crate::error::{ConstructionError, GraphError};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NamedGadget {
    PetersenMinusEdge,
    K4MinusEdge,
    K33MinusEdge,
    CubeMinusEdge,
    PetersenMinusVertex,
    SmallestJCell,
}

impl NamedGadget {
    pub const ALL: [NamedGadget; 6] = [
        NamedGadget::PetersenMinusEdge,
        NamedGadget::K4MinusEdge,
        NamedGadget::K33MinusEdge,
        NamedGadget::CubeMinusEdge,
        NamedGadget::PetersenMinusVertex,
        NamedGadget::SmallestJCell,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedGadget::PetersenMinusEdge => "petersen-minus-edge",
            NamedGadget::K4MinusEdge => "k4-minus-edge",
            NamedGadget::K33MinusEdge => "k33-minus-edge",
            NamedGadget::CubeMinusEdge => "cube-minus-edge",
            NamedGadget::PetersenMinusVertex => "petersen-minus-vertex",
            NamedGadget::SmallestJCell => "smallest-jcell",
        }
    }

    /// Accepts the kebab-case name, ignoring case and `_`/`-` differences.
    pub fn from_name(name: &str) -> Result<Self, ConstructionError> {
        let norm = |s: &str| s.to_ascii_lowercase().replace('_', "-");
        let want = norm(name);
        Self::ALL
            .into_iter()
            .find(|g| g.name() == want || norm(&format!("{g:?}")) == want)
            .ok_or_else(|| ConstructionError::UnknownGadget(name.to_string()))
    }

    fn data(self) -> &'static str {
        match self {
            NamedGadget::PetersenMinusEdge => {
                include_str!("../../data/gadgets/petersen_minus_edge.txt")
            }
            NamedGadget::K4MinusEdge => include_str!("../../data/gadgets/k4_minus_edge.txt"),
            NamedGadget::K33MinusEdge => include_str!("../../data/gadgets/k33_minus_edge.txt"),
            NamedGadget::CubeMinusEdge => include_str!("../../data/gadgets/cube_minus_edge.txt"),
            NamedGadget::PetersenMinusVertex => {
                include_str!("../../data/gadgets/petersen_minus_vertex.txt")
            }
            NamedGadget::SmallestJCell => include_str!("../../data/gadgets/smallest_jcell.txt"),
        }
    }

    pub fn graph(self) -> Graph {
        parse_edge_list(self.data(), self.name()).expect("shipped gadget files are well formed")
    }

    /// Vertices of degree below 3, ascending. For the J-cell these are
    /// `a, b, c, d` in that order.
    pub fn attach(self) -> Vec<usize> {
        let g = self.graph();
        (0..g.n()).filter(|&v| g.degree(v) < 3).collect()
    }
}

/// Gadget graph and its attach vertices.
pub fn named_graph(name: &str) -> Result<(Graph, Vec<usize>), ConstructionError> {
    let g = NamedGadget::from_name(name)?;
    Ok((g.graph(), g.attach()))
}

/// Loop-free graph that may have parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        Ok(MultiGraph { n, edges })
    }

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> Self {
        MultiGraph {
            n: 2,
            edges: vec![(0, 1); 3],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degree counting parallel edges.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) == 3)
    }
}

impl From<&Graph> for MultiGraph {
    fn from(g: &Graph) -> Self {
        MultiGraph {
            n: g.n(),
            edges: g.edges(),
        }
    }
}

/// A cycle of `k` edge-deleted Petersen graphs: copy `i` occupies vertices
/// `10i..10i+10` and its second attach vertex is joined to the first attach
/// vertex of copy `i+1 mod k`.
pub fn cycle_of_edge_deleted_petersen(k: usize) -> Result<Graph, ConstructionError> {
    if k < 3 {
        return Err(ConstructionError::Parameter(format!(
            "cycle length must be at least 3, got {k}"
        )));
    }
    let gadget = NamedGadget::PetersenMinusEdge;
    ring(&gadget.graph(), &gadget.attach(), k, &[(1, 0)])
}

/// `m` copies of `cell` in a ring; for each `(x, y)` in `links`, attach
/// vertex `x` of copy `i` is joined to attach vertex `y` of copy `i+1`.
fn ring(
    cell: &Graph,
    attach: &[usize],
    m: usize,
    links: &[(usize, usize)],
) -> Result<Graph, ConstructionError> {
    let size = cell.n();
    let mut edges = Vec::with_capacity(m * (cell.m() + links.len()));
    for i in 0..m {
        let base = i * size;
        edges.extend(cell.edges().into_iter().map(|(u, v)| (base + u, base + v)));
        let next = (i + 1) % m * size;
        for &(x, y) in links {
            edges.push((base + attach[x], next + attach[y]));
        }
    }
    Ok(Graph::from_edges(m * size, edges)?)
}

/// Ring of `m` smallest J-cells with edges `(b_i, a_{i+1})` and
/// `(c_i, d_{i+1})`, indices mod `m`. Cell `i` occupies `8i..8i+8`.
pub fn jcell_ring(m: usize) -> Result<Graph, ConstructionError> {
    if m < 2 {
        return Err(ConstructionError::Parameter(format!(
            "a ring needs at least 2 cells, got {m}"
        )));
    }
    let gadget = NamedGadget::SmallestJCell;
    // attach = [a, b, c, d]
    ring(&gadget.graph(), &gadget.attach(), m, &[(1, 0), (2, 3)])
}

/// Replaces every vertex of `s` by a vertex-deleted Petersen graph.
///
/// Kept vertices come first in ascending order, then one 9-vertex block per
/// substituted vertex in ascending order. A substituted vertex's neighbors,
/// sorted ascending, go to its block's attach vertices in ascending order.
pub fn substitute_p_star(h: &Graph, s: &VertexSet) -> Result<Graph, ConstructionError> {
    if !(0..h.n()).all(|v| h.degree(v) == 3) {
        return Err(ConstructionError::NotCubic);
    }
    if s.universe() != h.n() {
        return Err(ConstructionError::Parameter(
            "vertex set does not match the graph".into(),
        ));
    }
    if s.is_empty() {
        return Err(ConstructionError::Parameter(
            "no vertex to substitute".into(),
        ));
    }
    let gadget = NamedGadget::PetersenMinusVertex;
    let (cell, attach) = (gadget.graph(), gadget.attach());
    let kept: Vec<usize> = (0..h.n()).filter(|&v| !s.contains(v)).collect();
    let mut index = vec![0; h.n()];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let mut block = vec![0; h.n()];
    for (j, v) in s.iter().enumerate() {
        block[v] = kept.len() + j * cell.n();
    }
    let order = kept.len() + s.len() * cell.n();
    // Endpoint of edge (v, w) on v's side.
    let port = |v: usize, w: usize| {
        if s.contains(v) {
            let rank = h.neighbors(v).filter(|&x| x < w).count();
            block[v] + attach[rank]
        } else {
            index[v]
        }
    };
    let mut edges = Vec::new();
    for (u, v) in h.edges() {
        edges.push((port(u, v), port(v, u)));
    }
    for v in s.iter() {
        edges.extend(
            cell.edges()
                .into_iter()
                .map(|(a, b)| (block[v] + a, block[v] + b)),
        );
    }
    Ok(Graph::from_edges(order, edges)?)
}

/// Replaces every edge `(u, v)` of `h` by a copy of a two-terminal gadget,
/// joining `u` to the first attach vertex and `v` to the second. Copy `j`
/// (for the `j`-th edge) occupies `|V(h)| + j*|gadget|..`.
pub fn edge_expansion(h: &MultiGraph, gadget: NamedGadget) -> Result<Graph, ConstructionError> {
    let attach = gadget.attach();
    if attach.len() != 2 {
        return Err(ConstructionError::AttachCount(gadget.name(), attach.len()));
    }
    if !h.is_cubic() {
        return Err(ConstructionError::NotCubic);
    }
    let cell = gadget.graph();
    let size = cell.n();
    let mut edges = Vec::new();
    for (j, &(u, v)) in h.edges().iter().enumerate() {
        let base = h.n() + j * size;
        edges.extend(cell.edges().into_iter().map(|(a, b)| (base + a, base + b)));
        edges.push((u, base + attach[0]));
        edges.push((v, base + attach[1]));
    }
    Ok(Graph::from_edges(h.n() + h.edges().len() * size, edges)?)
}
