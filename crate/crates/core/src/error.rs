use thiserror::Error;

use crate::graph::{Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop pair ({0}, {0})")]
    SelfLoop(Vertex),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("invalid decomposition: {0}")]
    Invalid(String),
    #[error("structure violation: no degree-1 vertex, adjacent 2-vertices or low-D vertex of degree >= 3")]
    LemmaViolation,
    #[error("graph has treewidth greater than 2")]
    NotTreewidthTwo,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("graph has {order} vertices, brute force is capped at {cap}; use the tree-decomposition solver")]
    TooLarge { order: usize, cap: usize },
    #[error("parity system is inconsistent (Gallai violation)")]
    GallaiViolation,
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("structure exhaustion: no reducible configuration in a component of order {0}")]
    StructureExhaustion(usize),
    #[error("case table defect in branch {branch}: {detail}")]
    CaseTableDefect { branch: String, detail: String },
    #[error("component {component} has no odd induced subgraph on 2/5 of its vertices (optimum {optimum})")]
    BelowBound { component: VertexSet, optimum: usize },
    #[error("input has an isolated vertex {0}")]
    IsolatedVertex(Vertex),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("H_k is only available for k in 1..=4, got {0}")]
    InvalidK(usize),
    #[error("family {family} needs at least {min} vertices, got {n}")]
    TooSmall { family: &'static str, n: usize, min: usize },
    #[error("probability {0} is outside [0, 1]")]
    BadProbability(f64),
}
