//! Exact solvers used as ground truth.

mod brute;
mod chromatic;
mod dp;
mod gallai;

use serde::Serialize;

use crate::decomposition::{recognize_tw2, to_nice};
use crate::error::{DecompositionError, SolverError};
use crate::graph::{Graph, VertexSet};

pub use brute::{mois_brute, mois_brute_capped, BRUTE_CAP};
pub use chromatic::{chromatic_brute, CHROMATIC_CAP};
pub use dp::mois_dp;
pub use gallai::{gallai_partition, max_even_subgraph, EvenPartition};

/// A maximum odd induced subgraph: `size` is `f(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoisResult {
    pub size: usize,
    pub witness: VertexSet,
}

impl MoisResult {
    pub(crate) fn new(witness: VertexSet) -> Self {
        MoisResult { size: witness.len(), witness }
    }
}

/// Recognizes treewidth ≤ 2 and runs the decomposition DP.
pub fn mois_tw2(g: &Graph) -> Result<MoisResult, SolverError> {
    let td = recognize_tw2(g).decomposition().ok_or(DecompositionError::NotTreewidthTwo)?;
    let ntd = to_nice(&td)?;
    mois_dp(g, &ntd)
}
