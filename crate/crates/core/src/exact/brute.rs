use super::MoisResult;
use crate::error::SolverError;
use crate::graph::{Graph, Vertex, VertexSet};

pub const BRUTE_CAP: usize = 24;

/// `f(G)` by exhaustive search, refusing graphs above [`BRUTE_CAP`] vertices.
pub fn mois_brute(g: &Graph) -> Result<MoisResult, SolverError> {
    mois_brute_capped(g, BRUTE_CAP)
}

/// Tries even sizes from the largest down; within a size, subsets come in
/// lexicographic order of their sorted vertex lists, so the witness is the
/// lexicographically smallest maximum odd set.
pub fn mois_brute_capped(g: &Graph, cap: usize) -> Result<MoisResult, SolverError> {
    let n = g.order();
    if n > cap.min(63) {
        return Err(SolverError::TooLarge { order: n, cap });
    }
    let verts: Vec<Vertex> = g.vertices().collect();
    let adj: Vec<u64> = verts
        .iter()
        .map(|&v| {
            g.neighbor_set(v)
                .expect("own vertex")
                .iter()
                .map(|u| verts.binary_search(u).expect("neighbor is a vertex"))
                .fold(0u64, |m, i| m | 1 << i)
        })
        .collect();

    let mut s = n & !1;
    loop {
        if s == 0 {
            return Ok(MoisResult::new(VertexSet::new()));
        }
        if let Some(idx) = first_odd_subset(&adj, n, s) {
            return Ok(MoisResult::new(idx.into_iter().map(|i| verts[i]).collect()));
        }
        s -= 2;
    }
}

fn first_odd_subset(adj: &[u64], n: usize, s: usize) -> Option<Vec<usize>> {
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        if idx.iter().all(|&i| (adj[i] & mask).count_ones() % 2 == 1) {
            return Some(idx);
        }
        // next combination in lexicographic order
        let mut k = s;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if idx[k] < n - s + k {
                break;
            }
        }
        idx[k] += 1;
        for j in k + 1..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
