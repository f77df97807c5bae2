//! Oriented-graph structure library: pattern detection, hole
//! classification, exact colouring oracles, and certified partition
//! decompositions, with a batch CLI on top.
//!
//! The digraphs here are oriented graphs: no loops, no parallel edges, no
//! antiparallel pairs. See [`digraph::Digraph`] for the core type and the
//! edge-list exchange format.

pub mod digraph;
pub mod error;
pub mod exec;
pub mod vset;

pub mod constructions;
pub mod decompositions;
pub mod holes;
pub mod patterns;
pub mod solvers;
pub mod verify;

pub use digraph::{Acyclicity, Digraph, InducedSubdigraph, LayerDecomposition};
pub use error::{Error, Result};
pub use vset::VertexSet;
