//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use oddsub_core::{Graph, VertexSet};

/// Neighbor bitmasks over the vertices of `g` in increasing order.
pub fn masks(g: &Graph) -> Vec<u32> {
    let verts: Vec<usize> = g.vertices().collect();
    verts
        .iter()
        .map(|&v| {
            g.neighbor_set(v).unwrap().iter().map(|x| 1u32 << verts.binary_search(x).unwrap()).fold(0, |a, b| a | b)
        })
        .collect()
}

fn connected(adj: &[u32], set: u32) -> bool {
    let mut seen = set & set.wrapping_neg();
    loop {
        let mut grow = seen;
        let mut bits = seen;
        while bits != 0 {
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            grow |= adj[i as usize] & set;
        }
        if grow == seen {
            return seen == set;
        }
        seen = grow;
    }
}

fn boundary(adj: &[u32], set: u32) -> u32 {
    let mut out = 0;
    let mut bits = set;
    while bits != 0 {
        let i = bits.trailing_zeros();
        bits &= bits - 1;
        out |= adj[i as usize];
    }
    out & !set
}

/// Searches for four disjoint connected branch sets that are pairwise
/// adjacent.
pub fn has_k4_minor_masks(adj: &[u32]) -> bool {
    let n = adj.len();
    let sets: Vec<(u32, u32)> = (1u32..1 << n).filter(|&s| connected(adj, s)).map(|s| (s, boundary(adj, s))).collect();
    // branch sets are taken in increasing order of their lowest vertex
    let low = |s: u32| s.trailing_zeros();
    for &(a, na) in &sets {
        for &(b, nb) in &sets {
            if low(b) <= low(a) || b & a != 0 || na & b == 0 {
                continue;
            }
            for &(c, nc) in &sets {
                if low(c) <= low(b) || c & (a | b) != 0 || na & c == 0 || nb & c == 0 {
                    continue;
                }
                for &(d, _) in &sets {
                    if low(d) > low(c) && d & (a | b | c) == 0 && na & d != 0 && nb & d != 0 && nc & d != 0 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

pub fn has_k4_minor(g: &Graph) -> bool {
    has_k4_minor_masks(&masks(g))
}

/// Treewidth as the least, over all elimination orders, of the largest
/// neighborhood met while eliminating. Exponential; meant for n <= 8.
pub fn treewidth_by_elimination(g: &Graph) -> usize {
    let adj = masks(g);
    let n = adj.len();
    if n == 0 {
        return 0;
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = n - 1;
    permute(&mut order, 0, &adj, &mut best);
    best
}

fn width_of(order: &[usize], adj: &[u32]) -> usize {
    let mut a = adj.to_vec();
    let mut width = 0;
    for &v in order {
        let nb = a[v];
        width = width.max(nb.count_ones() as usize);
        let mut bits = nb;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            a[x] |= nb & !(1 << x);
            a[x] &= !(1 << v);
        }
    }
    width
}

fn permute(order: &mut Vec<usize>, k: usize, adj: &[u32], best: &mut usize) {
    if k == order.len() {
        *best = (*best).min(width_of(order, adj));
        return;
    }
    for i in k..order.len() {
        order.swap(k, i);
        permute(order, k + 1, adj, best);
        order.swap(k, i);
    }
}

/// `S_G(u)` straight from the definition: neighbors of degree at least 3,
/// and vertices sharing a degree-2 neighbor with `u`.
pub fn s_set_by_definition(g: &Graph, u: usize) -> VertexSet {
    g.vertices()
        .filter(|&x| x != u)
        .filter(|&x| {
            let nx = g.neighbor_set(x).unwrap();
            let direct = nx.contains(&u) && nx.len() >= 3;
            let via = g.vertices().any(|z| {
                g.neighbor_set(z).unwrap().len() == 2 && nx.contains(&z) && g.neighbor_set(u).unwrap().contains(&z)
            });
            direct || via
        })
        .collect()
}

/// Whether every vertex of `s` has an odd number of neighbors in `s`.
pub fn odd_by_count(g: &Graph, s: &VertexSet) -> bool {
    s.iter().all(|v| g.neighbor_set(v).unwrap().iter().filter(|x| s.contains(**x)).count() % 2 == 1)
}

/// Every graph on vertices `0..n`, one per edge mask.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let m = pairs.len();
    (0u64..1 << m).map(move |mask| {
        Graph::with_vertices(0..n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p))
            .unwrap()
    })
}
