use serde::Serialize;

use crate::decomposition::{lwz_find, StructureWitness};
use crate::error::ReductionError;
use crate::graph::{stats, Adjacency, Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConfigVariant {
    /// The component is `K_{1,m}`.
    Star { center: Vertex },
    /// `S(u) = {v}`.
    Lemma1 { u: Vertex, v: Vertex },
    /// `S(u) = {v, w}` with `v < w`.
    Lemma2 { u: Vertex, v: Vertex, w: Vertex },
}

/// A reducible local structure together with its kit sizes
/// `t1 = |N¹(u)|`, `t2 = |N²(u,v)|`, `t3 = |N²(u,w)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub variant: ConfigVariant,
    pub t1: usize,
    pub t2: usize,
    pub t3: Option<usize>,
    pub uv: bool,
    pub uw: Option<bool>,
}

/// The neighborhood data a plan works from. For a configuration with `S(u) = {v}`, `w`
/// is `None` and `n2uw` is empty.
#[derive(Clone, Debug)]
pub(crate) struct Local {
    pub u: Vertex,
    pub v: Vertex,
    pub w: Option<Vertex>,
    pub n1u: Vec<Vertex>,
    pub n2uv: Vec<Vertex>,
    pub n2uw: Vec<Vertex>,
    pub uv: bool,
    pub uw: bool,
}

impl Local {
    /// Computes the data at `u`, or `None` when `u` is not the center of a
    /// usable configuration: `D(u)` must be 1 or 2, the kit nonempty, and
    /// neither member of `S(u)` inside the kit.
    pub fn at<A: Adjacency>(g: &A, u: Vertex) -> Option<Local> {
        if !g.contains(u) || g.degree(u) == 0 {
            return None;
        }
        let s = stats::s_set_bounded(g, u, 2)?;
        let (v, w) = match s[..] {
            [v] => (v, None),
            [v, w] => (v, Some(w)),
            _ => return None,
        };
        let n1u = stats::pendants(g, u);
        let n2uv = stats::common_deg2(g, u, v);
        let n2uw = w.map(|w| stats::common_deg2(g, u, w)).unwrap_or_default();
        if n1u.is_empty() && n2uv.is_empty() && n2uw.is_empty() {
            return None;
        }
        if let Some(w) = w {
            // pendant triangle u-v-w with v, w of degree 2
            if n2uv.contains(&w) || n2uw.contains(&v) {
                return None;
            }
        }
        Some(Local { u, v, w, uv: g.has_edge(u, v), uw: w.is_some_and(|w| g.has_edge(u, w)), n1u, n2uv, n2uw })
    }

    pub fn t1(&self) -> usize {
        self.n1u.len()
    }

    pub fn t2(&self) -> usize {
        self.n2uv.len()
    }

    pub fn t3(&self) -> usize {
        self.n2uw.len()
    }

    /// `N¹(u) ∪ N²(u,v) ∪ N²(u,w)`, which equals `N(u) \ {v, w}`.
    pub fn kit(&self) -> Vec<Vertex> {
        let mut k = Vec::with_capacity(self.t1() + self.t2() + self.t3());
        k.extend_from_slice(&self.n1u);
        k.extend_from_slice(&self.n2uv);
        k.extend_from_slice(&self.n2uw);
        k
    }

    /// Exchanges the roles of `v` and `w`.
    pub fn swapped(&self) -> Local {
        let w = self.w.expect("swap needs two anchors");
        Local {
            u: self.u,
            v: w,
            w: Some(self.v),
            n1u: self.n1u.clone(),
            n2uv: self.n2uw.clone(),
            n2uw: self.n2uv.clone(),
            uv: self.uw,
            uw: self.uv,
        }
    }

    pub fn configuration(&self) -> Configuration {
        let variant = match self.w {
            None => ConfigVariant::Lemma1 { u: self.u, v: self.v },
            Some(w) => ConfigVariant::Lemma2 { u: self.u, v: self.v, w },
        };
        Configuration {
            variant,
            t1: self.t1(),
            t2: self.t2(),
            t3: self.w.map(|_| self.t3()),
            uv: self.uv,
            uw: self.w.map(|_| self.uw),
        }
    }
}

/// The reducible configuration centered at `u`, if there is one.
pub fn config_at<A: Adjacency>(g: &A, u: Vertex) -> Option<Configuration> {
    Local::at(g, u).map(|l| l.configuration())
}

/// Finds a configuration in a connected graph without isolated vertices,
/// trying in order: the whole graph is a star; a neighbor `x` of a leaf with
/// `d_{G-V1}(x) <= 2`; adjacent 2-vertices; the structure found in `G - V1`.
pub fn find_configuration(g: &Graph) -> Result<Configuration, ReductionError> {
    if let Some(v) = g.isolated_vertices().next() {
        return Err(ReductionError::IsolatedVertex(v));
    }
    if let Some(center) = g.is_star(&g.vertex_set()) {
        return Ok(Configuration {
            variant: ConfigVariant::Star { center },
            t1: g.degree(center),
            t2: 0,
            t3: None,
            uv: false,
            uw: None,
        });
    }

    let leaves: VertexSet = g.vertices().filter(|&v| g.degree(v) == 1).collect();
    let p: VertexSet = leaves.iter().flat_map(|l| g.neighbors(l)).collect();
    for x in p.iter() {
        let inner = g.neighbors(x).filter(|&y| !leaves.contains(y)).count();
        if inner <= 2 {
            if let Some(c) = config_at(g, x) {
                return Ok(c);
            }
        }
    }

    for u in g.vertices().filter(|&u| g.degree(u) == 2) {
        if g.neighbors(u).any(|v| g.degree(v) == 2) {
            if let Some(c) = config_at(g, u) {
                return Ok(c);
            }
        }
    }

    let g1 = g.remove_vertices(&leaves);
    if !g1.is_empty() {
        if let Ok(StructureWitness::HighDegreeSmallD(u)) = lwz_find(&g1) {
            if let Some(c) = config_at(g, u) {
                return Ok(c);
            }
        }
    }
    g.vertices().find_map(|u| config_at(g, u)).ok_or(ReductionError::StructureExhaustion(g.order()))
}
