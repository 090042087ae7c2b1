//! The extremal graphs `H_1..H_4`, with `f(H_k) = 2` on `k + 3` vertices.

use crate::error::GenerateError;
use crate::graph::{Graph, Vertex};

/// Pairs missing from `H_3` on vertices `0..6`: it is the complement of a
/// path on four vertices plus a disjoint edge.
const H3_NON_EDGES: [(Vertex, Vertex); 4] = [(0, 3), (0, 4), (1, 4), (2, 5)];

/// Pairs missing from `H_4` on vertices `0..7`: the 7-cycle
/// 0-3-6-2-5-1-4-0, so `H_4` is the complement of `C_7`.
const H4_NON_EDGES: [(Vertex, Vertex); 7] = [(0, 3), (3, 6), (2, 6), (2, 5), (1, 5), (1, 4), (0, 4)];

fn complement(n: usize, missing: &[(Vertex, Vertex)]) -> Graph {
    let edges = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !missing.contains(&(a, b)) && !missing.contains(&(b, a)));
    Graph::from_edges(edges).expect("no loops")
}

pub fn hk(k: usize) -> Result<Graph, GenerateError> {
    let g = match k {
        1 => Graph::from_edges([(0, 1), (1, 2), (2, 3)]).expect("path"),
        2 => Graph::from_edges((0..5).map(|i| (i, (i + 1) % 5))).expect("cycle"),
        3 => complement(6, &H3_NON_EDGES),
        4 => complement(7, &H4_NON_EDGES),
        _ => return Err(GenerateError::InvalidK(k)),
    };
    Ok(g)
}
