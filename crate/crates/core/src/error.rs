use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),
    #[error("edge {0}-{1} not present")]
    MissingEdge(usize, usize),
    #[error("vertex set is empty")]
    EmptyVertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph6 parse error at byte {offset}: {reason}")]
pub struct Graph6Error {
    pub offset: usize,
    pub reason: String,
}

/// Argument errors for the path and cycle searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("graph has {0} vertices; searches support at most 128")]
    TooLarge(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("a hamiltonian cycle needs at least 3 vertices, graph has {0}")]
    TooSmallForCycle(usize),
    #[error("endpoint vertices must be distinct: {0:?}")]
    EndpointsNotDistinct(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("path {index} has {len} vertices; only short paths (< {threshold}) are rerouted")]
    LongPath {
        index: usize,
        len: usize,
        threshold: usize,
    },
    #[error("no hamiltonian path of the induced subgraph of path {index} ends at a vertex with an outside neighbor")]
    NoAttachment { index: usize },
    #[error("path index {0} out of range")]
    BadIndex(usize),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Exact(#[from] crate::exact::ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("unknown gadget name {0:?}")]
    UnknownGadget(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("base graph must be cubic")]
    NotCubic,
    #[error("gadget must have exactly two attach vertices, {0} has {1}")]
    AttachCount(&'static str, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DataError {
    #[error("{path}: {reason}")]
    Malformed { path: String, reason: String },
    #[error("missing data file {0}")]
    Missing(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
