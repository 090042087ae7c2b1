use std::collections::{BTreeMap, BTreeSet};

use super::TreeDecomposition;
use crate::graph::{Graph, Vertex, VertexSet};

/// Outcome of treewidth-2 recognition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognition {
    Decomposition(TreeDecomposition),
    /// What is left (with fill edges) once every remaining vertex has degree
    /// at least 3. Its presence means the input has a `K4` minor.
    StuckCore(Graph),
}

impl Recognition {
    pub fn decomposition(self) -> Option<TreeDecomposition> {
        match self {
            Recognition::Decomposition(td) => Some(td),
            Recognition::StuckCore(_) => None,
        }
    }

    pub fn is_decomposition(&self) -> bool {
        matches!(self, Recognition::Decomposition(_))
    }
}

/// Eliminates vertices of current degree at most 2, joining the two neighbors
/// of an eliminated degree-2 vertex. Degree-≤1 vertices go first, so forests
/// come out with width 1; ties break on smallest id.
///
/// The bag of each eliminated vertex is the vertex plus its neighbors at
/// elimination time. Node 0 holds the last eliminated vertex; every other node
/// hangs below the node of its earliest-eliminated bag neighbor, and the
/// per-component roots are chained together.
pub fn recognize_tw2(g: &Graph) -> Recognition {
    let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> =
        g.vertices().map(|v| (v, g.neighbor_set(v).expect("own vertex").clone())).collect();
    // (degree class, vertex): degree <= 1 goes before degree 2
    let mut ready: BTreeSet<(usize, Vertex)> =
        adj.iter().filter(|(_, ns)| ns.len() <= 2).map(|(&v, ns)| (ns.len() / 2, v)).collect();
    let mut order: Vec<(Vertex, Vec<Vertex>)> = Vec::with_capacity(adj.len());

    while let Some((_, v)) = ready.pop_first() {
        let ns: Vec<Vertex> = adj.remove(&v).expect("ready vertex is live").into_iter().collect();
        for &x in &ns {
            adj.get_mut(&x).expect("neighbor is live").remove(&v);
        }
        if let [a, b] = ns[..] {
            adj.get_mut(&a).expect("live").insert(b);
            adj.get_mut(&b).expect("live").insert(a);
        }
        for &x in &ns {
            let d = adj[&x].len();
            if d <= 2 {
                ready.remove(&(1, x));
                ready.insert((d / 2, x));
            }
        }
        order.push((v, ns));
    }

    if !adj.is_empty() {
        let core =
            Graph::from_edges(adj.iter().flat_map(|(&u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v))))
                .expect("fill edges are never loops");
        return Recognition::StuckCore(core);
    }

    let k = order.len();
    // node index of the vertex eliminated at step i
    let node_of_step = |i: usize| k - 1 - i;
    let step: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(i, (v, _))| (*v, i)).collect();
    let mut bags = vec![VertexSet::new(); k];
    let mut edges = Vec::with_capacity(k.saturating_sub(1));
    let mut last_root: Option<usize> = None;
    for (i, (v, ns)) in order.iter().enumerate().rev() {
        let node = node_of_step(i);
        let mut bag: VertexSet = ns.iter().copied().collect();
        bag.insert(*v);
        bags[node] = bag;
        match ns.iter().map(|x| step[x]).min() {
            Some(parent_step) => edges.push((node_of_step(parent_step), node)),
            None => {
                if let Some(r) = last_root {
                    edges.push((r, node));
                }
                last_root = Some(node);
            }
        }
    }
    Recognition::Decomposition(TreeDecomposition::new(bags, edges))
}

pub fn treewidth_at_most_two(g: &Graph) -> bool {
    recognize_tw2(g).is_decomposition()
}
