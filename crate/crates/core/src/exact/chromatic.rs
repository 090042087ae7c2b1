use crate::error::SolverError;
use crate::graph::{Graph, Vertex};

pub const CHROMATIC_CAP: usize = 12;

/// Smallest `k` admitting a proper `k`-coloring (0 for the empty graph).
pub fn chromatic_brute(g: &Graph) -> Result<usize, SolverError> {
    let n = g.order();
    if n > CHROMATIC_CAP {
        return Err(SolverError::TooLarge { order: n, cap: CHROMATIC_CAP });
    }
    let verts: Vec<Vertex> = g.vertices().collect();
    // earlier neighbors only
    let back: Vec<Vec<usize>> = verts
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            g.neighbor_set(v)
                .expect("own vertex")
                .iter()
                .map(|u| verts.binary_search(u).expect("neighbor is a vertex"))
                .filter(|&j| j < i)
                .collect()
        })
        .collect();
    let mut colors = vec![0usize; n];
    Ok((0..=n).find(|&k| colorable(&back, &mut colors, 0, k, 0)).unwrap_or(n))
}

fn colorable(back: &[Vec<usize>], colors: &mut [usize], i: usize, k: usize, used: usize) -> bool {
    if i == back.len() {
        return true;
    }
    // a new color is only ever the next unused one
    for c in 0..k.min(used + 1) {
        if back[i].iter().all(|&j| colors[j] != c) {
            colors[i] = c;
            if colorable(back, colors, i + 1, k, used.max(c + 1)) {
                return true;
            }
        }
    }
    false
}
