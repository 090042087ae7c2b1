use serde::Serialize;

use crate::error::SolverError;
use crate::graph::{Adjacency, Graph, Vertex, VertexSet};

/// Two vertex classes that each induce a subgraph with all degrees even.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenPartition {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

/// Solves, over GF(2), `sum_{u in N(v)} x_u + d(v) x_v = d(v)` for every `v`;
/// `x_v = 0` puts `v` in `side_a`. Free variables are set to 0.
pub fn gallai_partition(g: &Graph) -> Result<EvenPartition, SolverError> {
    let verts: Vec<Vertex> = g.vertices().collect();
    let n = verts.len();
    let words = n / 64 + 1;
    let rhs_bit = n;
    let set = |row: &mut [u64], i: usize| row[i / 64] ^= 1 << (i % 64);
    let get = |row: &[u64], i: usize| row[i / 64] >> (i % 64) & 1 == 1;

    let mut rows: Vec<Vec<u64>> = verts
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut row = vec![0u64; words];
            for u in g.neighbors(v) {
                set(&mut row, verts.binary_search(&u).expect("neighbor is a vertex"));
            }
            if g.degree(v) % 2 == 1 {
                set(&mut row, i);
                set(&mut row, rhs_bit);
            }
            row
        })
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..n).find(|&i| get(&rows[i], col)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && get(row, col) {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    if rows[r..].iter().any(|row| get(row, rhs_bit)) {
        return Err(SolverError::GallaiViolation);
    }

    // reduced row echelon form: with free variables at 0 each pivot takes the rhs
    let mut x = vec![false; n];
    for (row, col) in pivots {
        x[col] = get(&rows[row], rhs_bit);
    }
    let side_a = verts.iter().zip(&x).filter(|(_, &b)| !b).map(|(&v, _)| v).collect();
    let side_b = verts.iter().zip(&x).filter(|(_, &b)| b).map(|(&v, _)| v).collect();
    Ok(EvenPartition { side_a, side_b })
}

/// The larger side of [`gallai_partition`] (`side_a` on ties); at least
/// `ceil(n/2)` vertices inducing an all-even subgraph.
pub fn max_even_subgraph(g: &Graph) -> Result<VertexSet, SolverError> {
    let p = gallai_partition(g)?;
    Ok(if p.side_b.len() > p.side_a.len() { p.side_b } else { p.side_a })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(g: &Graph) -> EvenPartition {
        let p = gallai_partition(g).unwrap();
        assert!(g.is_even_set(&p.side_a).unwrap());
        assert!(g.is_even_set(&p.side_b).unwrap());
        assert!(p.side_a.is_disjoint(&p.side_b));
        assert_eq!(p.side_a.union(&p.side_b), g.vertex_set());
        p
    }

    #[test]
    fn examples() {
        let c5 = Graph::from_edges((0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        check(&c5);
        assert!(max_even_subgraph(&c5).unwrap().len() >= 3);
        let edgeless = Graph::with_vertices([0, 1, 2], []).unwrap();
        assert_eq!(check(&edgeless).side_a, edgeless.vertex_set());
        let k2 = Graph::from_edges([(0, 1)]).unwrap();
        let p = check(&k2);
        assert_eq!((p.side_a.len(), p.side_b.len()), (1, 1));
        assert_eq!(max_even_subgraph(&k2).unwrap().len(), 1);
        let p4 = Graph::from_edges([(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(max_even_subgraph(&p4).unwrap().len() >= 2);
    }

    #[test]
    fn dense_graphs() {
        let k5 = Graph::from_edges((0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j)))).unwrap();
        check(&k5);
        let k33 = Graph::from_edges((0..3).flat_map(|i| (3..6).map(move |j| (i, j)))).unwrap();
        check(&k33);
    }
}
