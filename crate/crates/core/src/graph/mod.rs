//! Simple undirected graphs with sorted adjacency, plus the neighborhood
//! statistics the reduction rules are phrased in.

mod io;
pub mod stats;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub use io::{parse_edge_list, write_edge_list};

pub type Vertex = usize;

/// Read access to an undirected simple graph.
///
/// Implemented by the immutable [`Graph`] and by the shrinking work graph of
/// the reduction engine, so the neighborhood statistics are written once.
pub trait Adjacency {
    fn contains(&self, v: Vertex) -> bool;
    fn degree(&self, v: Vertex) -> usize;
    fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_;
    fn has_edge(&self, u: Vertex, v: Vertex) -> bool;
}

/// A sorted set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        self.0.remove(&v)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Vertex> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn as_set(&self) -> &BTreeSet<Vertex> {
        &self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl Extend<Vertex> for VertexSet {
    fn extend<I: IntoIterator<Item = Vertex>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(arr: [Vertex; N]) -> Self {
        arr.into_iter().collect()
    }
}

impl From<BTreeSet<Vertex>> for VertexSet {
    fn from(set: BTreeSet<Vertex>) -> Self {
        VertexSet(set)
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = std::collections::btree_set::IntoIter<Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Simple undirected graph on arbitrary non-negative integer ids.
///
/// Immutable once built: every deletion produces a new graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from unordered pairs. Duplicate pairs collapse.
    pub fn from_edges<I>(edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::with_vertices(std::iter::empty(), edges)
    }

    /// Like [`Graph::from_edges`], additionally declaring (possibly isolated)
    /// vertices.
    pub fn with_vertices<V, I>(vertices: V, edges: I) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = Vertex>,
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
        for v in vertices {
            adj.entry(v).or_default();
        }
        let mut edge_count = 0;
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj.entry(u).or_default().insert(v) {
                adj.entry(v).or_default().insert(u);
                edge_count += 1;
            }
        }
        Ok(Graph { adj, edge_count })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = Vertex> + ExactSizeIterator + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn neighbor_set(&self, v: Vertex) -> Result<&BTreeSet<Vertex>, GraphError> {
        self.adj.get(&v).ok_or(GraphError::UnknownVertex(v))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).min().unwrap_or(0)
    }

    pub fn isolated_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.iter().filter(|(_, ns)| ns.is_empty()).map(|(&v, _)| v)
    }

    pub fn check_subset(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.iter().find(|v| !self.adj.contains_key(v)) {
            Some(v) => Err(GraphError::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if self.adj.contains_key(&v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    /// `G[S]`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph, GraphError> {
        self.check_subset(s)?;
        Ok(self.induced_unchecked(s.as_set()))
    }

    pub(crate) fn induced_unchecked(&self, keep: &BTreeSet<Vertex>) -> Graph {
        let mut adj = BTreeMap::new();
        let mut twice = 0;
        for &v in keep {
            let ns: BTreeSet<Vertex> = self.adj[&v].iter().copied().filter(|x| keep.contains(x)).collect();
            twice += ns.len();
            adj.insert(v, ns);
        }
        Graph { adj, edge_count: twice / 2 }
    }

    /// `G - S`.
    pub fn remove_vertices(&self, s: &VertexSet) -> Graph {
        let keep: BTreeSet<Vertex> = self.vertices().filter(|v| !s.contains(*v)).collect();
        self.induced_unchecked(&keep)
    }

    /// True iff every vertex of `G[S]` has odd degree inside `G[S]`.
    pub fn is_odd_set(&self, s: &VertexSet) -> Result<bool, GraphError> {
        self.check_subset(s)?;
        Ok(self.first_even_vertex(s).is_none())
    }

    /// First vertex of `S` whose degree inside `G[S]` is even, if any.
    pub(crate) fn first_even_vertex(&self, s: &VertexSet) -> Option<Vertex> {
        s.iter().find(|&v| self.adj[&v].iter().filter(|x| s.contains(**x)).count() % 2 == 0)
    }

    /// True iff every vertex of `G[S]` has even degree inside `G[S]`.
    pub fn is_even_set(&self, s: &VertexSet) -> Result<bool, GraphError> {
        self.check_subset(s)?;
        Ok(s.iter().all(|v| self.adj[&v].iter().filter(|x| s.contains(**x)).count() % 2 == 0))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for &x in &self.adj[&v] {
                    if seen.insert(x) {
                        queue.push_back(x);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Center of the star `K_{1,m}` (m >= 1) induced by `component`, if it is one.
    /// For `K2` the smaller endpoint is returned.
    pub fn is_star(&self, component: &VertexSet) -> Option<Vertex> {
        if component.len() < 2 {
            return None;
        }
        let m = component.len() - 1;
        let inner =
            |v: Vertex| self.adj.get(&v).map(|ns| ns.iter().filter(|x| component.contains(**x)).count()).unwrap_or(0);
        let center = component.iter().find(|&v| inner(v) == m)?;
        let leaves_ok = component.iter().filter(|&v| v != center).all(|v| inner(v) == 1);
        leaves_ok.then_some(center)
    }

    pub fn pendant_neighbors(&self, u: Vertex) -> Result<VertexSet, GraphError> {
        self.check_vertex(u)?;
        Ok(stats::pendants(self, u).into_iter().collect())
    }

    pub fn deg2_neighbors(&self, u: Vertex) -> Result<VertexSet, GraphError> {
        self.check_vertex(u)?;
        Ok(stats::deg2_neighbors(self, u).into_iter().collect())
    }

    pub fn common_deg2(&self, u: Vertex, v: Vertex) -> Result<VertexSet, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(stats::common_deg2(self, u, v).into_iter().collect())
    }

    /// `N²(v, w)` without `u`.
    pub fn common_deg2_excl(&self, v: Vertex, w: Vertex, u: Vertex) -> Result<VertexSet, GraphError> {
        self.check_vertex(u)?;
        let mut set = self.common_deg2(v, w)?;
        set.remove(u);
        Ok(set)
    }

    pub fn s_set(&self, u: Vertex) -> Result<VertexSet, GraphError> {
        self.check_vertex(u)?;
        Ok(stats::s_set(self, u).into_iter().collect())
    }

    pub fn d_big(&self, u: Vertex) -> Result<usize, GraphError> {
        Ok(self.s_set(u)?.len())
    }
}

impl Adjacency for Graph {
    fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|ns| ns.contains(&v))
    }
}
