use serde::Serialize;

use crate::error::DecompositionError;
use crate::graph::{stats, Adjacency, Graph, Vertex};

/// One of the three local structures every nonempty `K4`-minor-free graph has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StructureWitness {
    /// A vertex of degree at most 1.
    MinDegreeLE1(Vertex),
    /// Two adjacent vertices of degree 2.
    AdjacentTwoVertices(Vertex, Vertex),
    /// A vertex of degree at least 3 with `D(u) <= 2`.
    HighDegreeSmallD(Vertex),
}

impl StructureWitness {
    /// Re-checks the witness predicate against `g`.
    pub fn holds_in(&self, g: &Graph) -> bool {
        match *self {
            StructureWitness::MinDegreeLE1(v) => g.contains(v) && g.degree(v) <= 1,
            StructureWitness::AdjacentTwoVertices(u, v) => g.has_edge(u, v) && g.degree(u) == 2 && g.degree(v) == 2,
            StructureWitness::HighDegreeSmallD(u) => g.contains(u) && g.degree(u) >= 3 && stats::s_set(g, u).len() <= 2,
        }
    }
}

/// Scans for a degree-≤1 vertex, then adjacent 2-vertices, then a vertex of
/// degree ≥ 3 with `D(u) <= 2`, smallest ids first.
pub fn lwz_find(g: &Graph) -> Result<StructureWitness, DecompositionError> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) <= 1) {
        return Ok(StructureWitness::MinDegreeLE1(v));
    }
    for u in g.vertices().filter(|&u| g.degree(u) == 2) {
        if let Some(v) = g.neighbors(u).find(|&v| g.degree(v) == 2) {
            return Ok(StructureWitness::AdjacentTwoVertices(u, v));
        }
    }
    g.vertices()
        .find(|&u| g.degree(u) >= 3 && stats::s_set_bounded(g, u, 2).is_some())
        .map(StructureWitness::HighDegreeSmallD)
        .ok_or(DecompositionError::LemmaViolation)
}
