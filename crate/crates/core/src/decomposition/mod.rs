//! Tree decompositions of width at most 2.

mod lwz;
mod nice;
mod recognize;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::graph::{Adjacency, Graph, Vertex, VertexSet};

pub use lwz::{lwz_find, StructureWitness};
pub use nice::to_nice;
pub use recognize::{recognize_tw2, treewidth_at_most_two, Recognition};

pub const MAX_BAG: usize = 3;

/// A tree of bags. Node ids are indices into the bag list; the tree is given
/// by its undirected edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Unvalidated constructor; see [`validate_decomposition`].
    pub fn new(bags: Vec<VertexSet>, edges: Vec<(usize, usize)>) -> Self {
        TreeDecomposition { bags, edges }
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn bag(&self, node: usize) -> &VertexSet {
        &self.bags[node]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one; `-1` only for the empty decomposition.
    pub fn width(&self) -> isize {
        self.bags.iter().map(|b| b.len() as isize).max().unwrap_or(0) - 1
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            if a < adj.len() && b < adj.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        adj
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "vertex", rename_all = "lowercase")]
pub enum NiceKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    pub bag: VertexSet,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition stored children-first: every child index is
/// smaller than its parent's, and the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn width(&self) -> isize {
        self.nodes.iter().map(|n| n.bag.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn join_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind == NiceKind::Join).count()
    }

    /// Forgets the nice structure, keeping bags and tree edges.
    pub fn as_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let edges = self.nodes.iter().enumerate().flat_map(|(i, n)| n.children.iter().map(move |&c| (i, c))).collect();
        TreeDecomposition::new(bags, edges)
    }
}

/// The first violated decomposition condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotATree,
    Width { node: usize, size: usize },
    UnknownVertex { node: usize, vertex: Vertex },
    VertexCoverage(Vertex),
    EdgeCoverage(Vertex, Vertex),
    Connectivity(Vertex),
    NiceForm { node: usize, reason: String },
}

impl Violation {
    /// Short name of the violated condition.
    pub fn condition(&self) -> &'static str {
        match self {
            Violation::NotATree => "tree",
            Violation::Width { .. } => "width",
            Violation::UnknownVertex { .. } | Violation::VertexCoverage(_) => "vertex coverage",
            Violation::EdgeCoverage(..) => "edge coverage",
            Violation::Connectivity(_) => "connectivity",
            Violation::NiceForm { .. } => "nice form",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree => write!(f, "tree: nodes and edges do not form a tree"),
            Violation::Width { node, size } => write!(f, "width: bag {node} has {size} vertices"),
            Violation::UnknownVertex { node, vertex } => {
                write!(f, "vertex coverage: bag {node} names unknown vertex {vertex}")
            }
            Violation::VertexCoverage(v) => write!(f, "vertex coverage: vertex {v} is in no bag"),
            Violation::EdgeCoverage(u, v) => write!(f, "edge coverage: edge {u}-{v} is in no bag"),
            Violation::Connectivity(v) => {
                write!(f, "connectivity: bags containing {v} are not connected")
            }
            Violation::NiceForm { node, reason } => write!(f, "nice form: node {node}: {reason}"),
        }
    }
}

/// Checks the three decomposition conditions, that the nodes form a tree,
/// and that every bag has at most three vertices.
pub fn validate_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<(), Violation> {
    validate_shape(td)?;
    let mut occurrences: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for (i, bag) in td.bags.iter().enumerate() {
        for v in bag.iter() {
            if !g.contains(v) {
                return Err(Violation::UnknownVertex { node: i, vertex: v });
            }
            occurrences.entry(v).or_default().push(i);
        }
    }
    if let Some(v) = g.vertices().find(|v| !occurrences.contains_key(v)) {
        return Err(Violation::VertexCoverage(v));
    }
    for (u, v) in g.edges() {
        let covered = occurrences[&u].iter().any(|&i| td.bags[i].contains(v));
        if !covered {
            return Err(Violation::EdgeCoverage(u, v));
        }
    }
    Ok(())
}

/// Graph-independent checks: tree shape, width, connected occurrences.
pub(crate) fn validate_shape(td: &TreeDecomposition) -> Result<(), Violation> {
    let k = td.bags.len();
    if k == 0 {
        return if td.edges.is_empty() { Ok(()) } else { Err(Violation::NotATree) };
    }
    if td.edges.len() != k - 1 || td.edges.iter().any(|&(a, b)| a >= k || b >= k || a == b) {
        return Err(Violation::NotATree);
    }
    let adj = td.adjacency();
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    let mut reached = 1;
    while let Some(t) = queue.pop_front() {
        for &s in &adj[t] {
            if !seen[s] {
                seen[s] = true;
                reached += 1;
                queue.push_back(s);
            }
        }
    }
    if reached != k {
        return Err(Violation::NotATree);
    }
    if let Some((node, bag)) = td.bags.iter().enumerate().find(|(_, b)| b.len() > MAX_BAG) {
        return Err(Violation::Width { node, size: bag.len() });
    }
    // In a tree, the nodes holding v induce a connected subtree iff they span
    // exactly one fewer tree edge than there are such nodes.
    let mut nodes_with: BTreeMap<Vertex, (usize, usize)> = BTreeMap::new();
    for bag in &td.bags {
        for v in bag.iter() {
            nodes_with.entry(v).or_default().0 += 1;
        }
    }
    for &(a, b) in &td.edges {
        for v in td.bags[a].iter().filter(|&v| td.bags[b].contains(v)) {
            nodes_with.entry(v).or_default().1 += 1;
        }
    }
    match nodes_with.into_iter().find(|(_, (n, e))| *e + 1 != *n) {
        Some((v, _)) => Err(Violation::Connectivity(v)),
        None => Ok(()),
    }
}

/// Validates the nice-form invariants and the underlying decomposition.
pub fn validate_nice(g: &Graph, ntd: &NiceTreeDecomposition) -> Result<(), Violation> {
    let bad = |node: usize, reason: &str| Violation::NiceForm { node, reason: reason.to_string() };
    if ntd.nodes.is_empty() {
        return Err(bad(0, "no nodes"));
    }
    let root = ntd.root();
    if !ntd.nodes[root].bag.is_empty() {
        return Err(bad(root, "root bag is not empty"));
    }
    let mut parent_count = vec![0usize; ntd.nodes.len()];
    for (i, node) in ntd.nodes.iter().enumerate() {
        if node.children.iter().any(|&c| c >= i) {
            return Err(bad(i, "child index not below parent"));
        }
        for &c in &node.children {
            parent_count[c] += 1;
        }
        let child_bag = |k: usize| &ntd.nodes[node.children[k]].bag;
        match node.kind {
            NiceKind::Leaf => {
                if !node.children.is_empty() || !node.bag.is_empty() {
                    return Err(bad(i, "leaf must be childless with an empty bag"));
                }
            }
            NiceKind::Introduce(v) => {
                if node.children.len() != 1 {
                    return Err(bad(i, "introduce needs exactly one child"));
                }
                let mut expect = child_bag(0).clone();
                if !expect.insert(v) || expect != node.bag {
                    return Err(bad(i, "introduce must add exactly one vertex"));
                }
            }
            NiceKind::Forget(v) => {
                if node.children.len() != 1 {
                    return Err(bad(i, "forget needs exactly one child"));
                }
                let mut expect = child_bag(0).clone();
                if !expect.remove(v) || expect != node.bag {
                    return Err(bad(i, "forget must remove exactly one vertex"));
                }
            }
            NiceKind::Join => {
                if node.children.len() != 2 || child_bag(0) != &node.bag || child_bag(1) != &node.bag {
                    return Err(bad(i, "join needs two children with identical bags"));
                }
            }
        }
    }
    if parent_count[..root].iter().any(|&p| p != 1) || parent_count[root] != 0 {
        return Err(bad(root, "nodes do not form a rooted tree"));
    }
    validate_decomposition(g, &ntd.as_tree_decomposition())
}
