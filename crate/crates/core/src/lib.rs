//! Exact and heuristic computations of the minimum leaf number and the path
//! covering number of (mostly cubic) graphs.
//!
//! * [`graph`], [`graph6`], [`iso`]: representation, serialization, predicates
//!   and isomorphism.
//! * [`hamsearch`]: exhaustive hamiltonian path and cycle queries.
//! * [`exact`]: minimum leaf number, path covering number, spanning tree
//!   counting and enumeration.
//! * [`cover`]: the path-cover-to-spanning-tree procedure with its leaf
//!   accounting.
//! * [`constructions`]: gadget families with fixed labelings.
//! * [`census`]: generators, stream scans and the embedded reference graphs.

pub mod census;
pub mod constructions;
pub mod cover;
pub mod edgelist;
pub mod error;
pub mod exact;
pub mod graph;
pub mod graph6;
pub mod hamsearch;
pub mod iso;
pub mod par;

pub use error::{ConstructionError, CoverError, DataError, Graph6Error, GraphError, SearchError};
pub use graph::{Graph, VertexSet};
pub use graph6::{parse_graph6, write_graph6};
pub use hamsearch::{PathWitness, SearchBudget, Verdict};
