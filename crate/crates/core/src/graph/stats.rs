//! Neighborhood statistics over any [`Adjacency`].
//!
//! Outputs are sorted ascending.

use super::{Adjacency, Vertex};

/// `N¹(u)`: neighbors of degree 1.
pub fn pendants<A: Adjacency>(g: &A, u: Vertex) -> Vec<Vertex> {
    sorted(g.neighbors(u).filter(|&x| g.degree(x) == 1))
}

/// `N²(u)`: neighbors of degree 2.
pub fn deg2_neighbors<A: Adjacency>(g: &A, u: Vertex) -> Vec<Vertex> {
    sorted(g.neighbors(u).filter(|&x| g.degree(x) == 2))
}

/// `N²(u, v)`: common neighbors of `u` and `v` of degree exactly 2.
pub fn common_deg2<A: Adjacency>(g: &A, u: Vertex, v: Vertex) -> Vec<Vertex> {
    if u == v {
        return Vec::new();
    }
    sorted(g.neighbors(u).filter(|&x| g.degree(x) == 2 && g.has_edge(x, v)))
}

/// The neighbor of a degree-2 vertex `z` other than `from`.
pub fn far_end<A: Adjacency>(g: &A, z: Vertex, from: Vertex) -> Option<Vertex> {
    g.neighbors(z).find(|&x| x != from)
}

/// `S(u)`: neighbors of degree at least 3, together with every vertex `x != u`
/// sharing a degree-2 common neighbor with `u` (whether or not `x` is itself
/// adjacent to `u`).
pub fn s_set<A: Adjacency>(g: &A, u: Vertex) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = g.neighbors(u).filter_map(|y| s_member_via(g, u, y)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The member of `S(u)` contributed by neighbor `y`, if any.
fn s_member_via<A: Adjacency>(g: &A, u: Vertex, y: Vertex) -> Option<Vertex> {
    match g.degree(y) {
        0 | 1 => None,
        2 => far_end(g, y, u),
        _ => Some(y),
    }
}

/// `S(u)` if it has at most `limit` members, otherwise `None`. Stops scanning
/// as soon as the bound is exceeded.
pub fn s_set_bounded<A: Adjacency>(g: &A, u: Vertex, limit: usize) -> Option<Vec<Vertex>> {
    let mut out: Vec<Vertex> = Vec::new();
    for y in g.neighbors(u) {
        if let Some(x) = s_member_via(g, u, y) {
            if !out.contains(&x) {
                out.push(x);
                if out.len() > limit {
                    return None;
                }
            }
        }
    }
    out.sort_unstable();
    Some(out)
}

fn sorted(it: impl Iterator<Item = Vertex>) -> Vec<Vertex> {
    let mut v: Vec<Vertex> = it.collect();
    v.sort_unstable();
    v
}
