//! Certified construction of an odd induced subgraph with at least `2n/5`
//! vertices on graphs of treewidth at most 2 without isolated vertices.

mod apply;
mod config;
mod engine;
mod plan;
mod replay;

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::decomposition::{recognize_tw2, to_nice};
use crate::error::{DecompositionError, ReductionError};
use crate::exact::{mois_dp, BRUTE_CAP};
use crate::graph::{Adjacency, Graph, Vertex, VertexSet};

pub use apply::{apply_lemma1, apply_lemma2, Residual};
pub use config::{config_at, find_configuration, ConfigVariant, Configuration};

/// Components up to this order are solved exhaustively.
pub const DEFAULT_BASE_THRESHOLD: usize = 16;

/// Smallest usable base threshold; a triangle has no reducible configuration.
pub const MIN_BASE_THRESHOLD: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructOptions {
    /// Components (and residual components) with at most this many vertices
    /// are solved by brute force. Clamped to
    /// `MIN_BASE_THRESHOLD..=BRUTE_CAP`.
    pub base_threshold: usize,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions { base_threshold: DEFAULT_BASE_THRESHOLD }
    }
}

/// One reduction: `removed` is `V0`; `added` joins the solution of the
/// remaining graph and `dropped` leaves it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub branch: String,
    pub removed: VertexSet,
    pub added: VertexSet,
    #[serde(skip_serializing_if = "VertexSet::is_empty")]
    pub dropped: VertexSet,
}

impl ReductionStep {
    /// `(|added| - |dropped|) / |removed| >= 2/5`.
    pub fn meets_ratio(&self) -> bool {
        5 * self.added.len() as i64 - 5 * self.dropped.len() as i64 >= 2 * self.removed.len() as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddCertificate {
    pub set: VertexSet,
    /// Claimed `|set| / |V(G)|`.
    #[serde(serialize_with = "ratio_string")]
    pub ratio: Ratio<u64>,
    /// Steps in the order they were taken; replaying them backwards rebuilds
    /// `set`.
    pub trace: Vec<ReductionStep>,
    pub fallback_used: bool,
}

impl OddCertificate {
    pub fn new(g: &Graph, set: VertexSet, trace: Vec<ReductionStep>, fallback_used: bool) -> Self {
        let ratio = size_ratio(set.len(), g.order());
        OddCertificate { set, ratio, trace, fallback_used }
    }
}

/// `size / order`, with `0/1` for the empty graph.
pub fn size_ratio(size: usize, order: usize) -> Ratio<u64> {
    Ratio::new(size as u64, order.max(1) as u64)
}

fn ratio_string<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("vertex {0} has even degree in the induced subgraph")]
    EvenDegree(Vertex),
    #[error("ratio claim {claimed} does not match the actual {actual}")]
    RatioMismatch { claimed: String, actual: String },
    #[error("ratio {size}/{order} is below 2/5")]
    RatioBelow { size: usize, order: usize },
    #[error("step {step} ({branch}): {detail}")]
    Trace { step: usize, branch: String, detail: String },
}

/// Re-checks oddness, the claimed ratio, `|set| >= 2n/5`, and, when a trace
/// is present, that its steps partition `V(G)` and replay to `set` with every
/// step meeting the ratio and keeping all degrees odd.
pub fn verify_certificate(g: &Graph, cert: &OddCertificate) -> Result<(), CertificateError> {
    if let Some(v) = cert.set.iter().find(|&v| !g.contains(v)) {
        return Err(CertificateError::UnknownVertex(v));
    }
    if let Some(v) = g.first_even_vertex(&cert.set) {
        return Err(CertificateError::EvenDegree(v));
    }
    let actual = size_ratio(cert.set.len(), g.order());
    if actual != cert.ratio {
        return Err(CertificateError::RatioMismatch {
            claimed: format!("{}/{}", cert.ratio.numer(), cert.ratio.denom()),
            actual: format!("{}/{}", actual.numer(), actual.denom()),
        });
    }
    if 5 * cert.set.len() < 2 * g.order() {
        return Err(CertificateError::RatioBelow { size: cert.set.len(), order: g.order() });
    }
    if cert.trace.is_empty() {
        return Ok(());
    }
    verify_trace(g, cert)
}

fn verify_trace(g: &Graph, cert: &OddCertificate) -> Result<(), CertificateError> {
    let verts: Vec<Vertex> = g.vertices().collect();
    let id = |v: Vertex| verts.binary_search(&v).ok();
    let trace_err = |step: usize, branch: &str, detail: String| CertificateError::Trace {
        step,
        branch: branch.to_string(),
        detail,
    };
    let adj: Vec<BTreeSet<Vertex>> = verts
        .iter()
        .map(|&v| g.neighbor_set(v).expect("own vertex").iter().map(|&x| id(x).expect("vertex")).collect())
        .collect();

    let mut dense: Vec<[Vec<Vertex>; 3]> = Vec::with_capacity(cert.trace.len());
    let mut seen = vec![false; verts.len()];
    for (i, s) in cert.trace.iter().enumerate() {
        let map = |set: &VertexSet| -> Result<Vec<Vertex>, CertificateError> {
            set.iter().map(|v| id(v).ok_or_else(|| trace_err(i, &s.branch, format!("unknown vertex {v}")))).collect()
        };
        let removed = map(&s.removed)?;
        for &r in &removed {
            if std::mem::replace(&mut seen[r], true) {
                return Err(trace_err(i, &s.branch, format!("vertex {} removed twice", verts[r])));
            }
        }
        dense.push([removed, map(&s.added)?, map(&s.dropped)?]);
    }
    if let Some(r) = seen.iter().position(|&b| !b) {
        return Err(trace_err(cert.trace.len(), "end", format!("vertex {} never removed", verts[r])));
    }

    let mut replay = replay::Replay::from_removed(&adj, &verts, dense.iter().map(|d| d[0].as_slice()));
    for i in (0..dense.len()).rev() {
        let [removed, added, dropped] = &dense[i];
        let branch = &cert.trace[i].branch;
        replay.check_parts(i, removed.len(), branch, added, dropped).map_err(|d| trace_err(i, branch, d.detail))?;
    }
    let rebuilt: VertexSet = replay.members().into_iter().map(|k| verts[k]).collect();
    if rebuilt != cert.set {
        return Err(trace_err(0, "replay", "the trace does not rebuild the set".into()));
    }
    Ok(())
}

pub fn construct_odd(g: &Graph) -> Result<OddCertificate, ReductionError> {
    construct_odd_with(g, &ConstructOptions::default())
}

/// Splits `g` into components and reduces each one independently. A
/// component whose reduction hits a defect is solved by the decomposition DP
/// instead, and `fallback_used` is set.
pub fn construct_odd_with(g: &Graph, opts: &ConstructOptions) -> Result<OddCertificate, ReductionError> {
    if let Some(v) = g.isolated_vertices().next() {
        return Err(ReductionError::IsolatedVertex(v));
    }
    if !recognize_tw2(g).is_decomposition() {
        return Err(DecompositionError::NotTreewidthTwo.into());
    }
    let base = opts.base_threshold.clamp(MIN_BASE_THRESHOLD, BRUTE_CAP);
    let parts: Vec<Result<Part, ReductionError>> =
        g.components().par_iter().map(|c| solve_component(g, c, base)).collect();

    let mut set = VertexSet::new();
    let mut trace = Vec::new();
    let mut fallback_used = false;
    for p in parts {
        let p = p?;
        set.extend(p.set);
        trace.extend(p.trace);
        fallback_used |= p.fallback;
    }
    let cert = OddCertificate::new(g, set, trace, fallback_used);
    verify_certificate(g, &cert)
        .map_err(|e| ReductionError::CaseTableDefect { branch: "certificate".into(), detail: e.to_string() })?;
    Ok(cert)
}

struct Part {
    set: Vec<Vertex>,
    trace: Vec<ReductionStep>,
    fallback: bool,
}

fn solve_component(g: &Graph, comp: &VertexSet, base: usize) -> Result<Part, ReductionError> {
    let verts = comp.to_vec();
    let adj: Vec<BTreeSet<Vertex>> = verts
        .iter()
        .map(|&v| {
            g.neighbor_set(v)
                .expect("own vertex")
                .iter()
                .map(|x| verts.binary_search(x).expect("same component"))
                .collect()
        })
        .collect();
    let global = |s: &[Vertex]| -> VertexSet { s.iter().map(|&k| verts[k]).collect() };

    match engine::solve(adj, &verts, base) {
        Ok(solved) => {
            let trace = solved
                .steps
                .iter()
                .zip(&solved.outcomes)
                .map(|(s, o)| ReductionStep {
                    branch: o.label.to_string(),
                    removed: global(&s.v0),
                    added: global(&o.added),
                    dropped: global(&o.dropped),
                })
                .collect();
            Ok(Part { set: solved.set.iter().map(|&k| verts[k]).collect(), trace, fallback: false })
        }
        Err(defect) => {
            let sub = g.induced_subgraph(comp).expect("own vertices");
            let td = recognize_tw2(&sub).decomposition().ok_or(DecompositionError::NotTreewidthTwo)?;
            let r = mois_dp(&sub, &to_nice(&td)?)?;
            if 5 * r.size < 2 * comp.len() {
                return Err(ReductionError::BelowBound { component: comp.clone(), optimum: r.size });
            }
            let step = ReductionStep {
                branch: format!("fallback/dp after {}: {}", defect.branch, defect.detail),
                removed: comp.clone(),
                added: r.witness.clone(),
                dropped: VertexSet::new(),
            };
            Ok(Part { set: r.witness.to_vec(), trace: vec![step], fallback: true })
        }
    }
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: removed {} added {}", self.branch, self.removed, self.added)?;
        if !self.dropped.is_empty() {
            write!(f, " dropped {}", self.dropped)?;
        }
        Ok(())
    }
}
