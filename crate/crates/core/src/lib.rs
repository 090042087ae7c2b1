//! Odd induced subgraphs of graphs with treewidth at most two.

pub mod campaign;
pub mod decomposition;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod reduction;

pub use error::{DecompositionError, GenerateError, GraphError, ReductionError, SolverError};
pub use graph::{Adjacency, Graph, Vertex, VertexSet};
