use super::config::{config_at, ConfigVariant, Configuration, Local};
use super::engine::isolated_after;
use super::plan::{plan, Plan};
use super::{verify_certificate, OddCertificate, ReductionStep};
use crate::error::ReductionError;
use crate::exact::mois_brute;
use crate::graph::{Graph, VertexSet};

/// Solver for the graph left after removing `V0`.
pub type Residual<'a> = &'a mut dyn FnMut(&Graph) -> Result<OddCertificate, ReductionError>;

/// Carries out one reduction at a configuration with `S(u) = {v}`, solving the rest with
/// `residual`.
pub fn apply_lemma1(g: &Graph, cfg: &Configuration, residual: Residual) -> Result<OddCertificate, ReductionError> {
    match cfg.variant {
        ConfigVariant::Lemma1 { .. } => apply(g, cfg, residual, 0),
        _ => Err(ReductionError::InvalidConfiguration(format!("not a Lemma1 configuration: {cfg:?}"))),
    }
}

/// Carries out one reduction at a configuration with `S(u) = {v, w}`. If removing `V0` would leave
/// an anchor isolated, the reduction is made at that anchor instead.
pub fn apply_lemma2(g: &Graph, cfg: &Configuration, residual: Residual) -> Result<OddCertificate, ReductionError> {
    match cfg.variant {
        ConfigVariant::Lemma2 { .. } => apply(g, cfg, residual, 0),
        _ => Err(ReductionError::InvalidConfiguration(format!("not a Lemma2 configuration: {cfg:?}"))),
    }
}

fn apply(g: &Graph, cfg: &Configuration, residual: Residual, depth: usize) -> Result<OddCertificate, ReductionError> {
    let u = match cfg.variant {
        ConfigVariant::Lemma1 { u, .. } | ConfigVariant::Lemma2 { u, .. } => u,
        ConfigVariant::Star { .. } => return Err(ReductionError::InvalidConfiguration("star has no reduction".into())),
    };
    let local = Local::at(g, u)
        .filter(|l| l.configuration() == *cfg)
        .ok_or_else(|| ReductionError::InvalidConfiguration(format!("{cfg:?} does not hold")))?;

    let (v0, label, added, dropped, sub) = match plan(g, &local) {
        Plan::Base { v0, label } => {
            let v0: VertexSet = v0.into_iter().collect();
            let r = mois_brute(&g.induced_subgraph(&v0)?)?;
            let rest = g.remove_vertices(&v0);
            let sub = residual(&rest)?;
            (v0, label, r.witness, VertexSet::new(), sub)
        }
        Plan::Step { v0, assemble } => {
            if let Some(z) = isolated_after(g, &v0) {
                let next = config_at(g, z)
                    .filter(|_| depth < 2)
                    .ok_or_else(|| ReductionError::InvalidConfiguration(format!("removing V0 isolates vertex {z}")))?;
                return apply(g, &next, residual, depth + 1);
            }
            let v0: VertexSet = v0.into_iter().collect();
            let rest = g.remove_vertices(&v0);
            let sub = residual(&rest)?;
            let o = assemble(&|x| sub.set.contains(x));
            (v0, o.label, o.added.into_iter().collect(), o.dropped.into_iter().collect(), sub)
        }
    };

    let rest_order = g.order() - v0.len();
    let mut set = sub.set.clone();
    for d in dropped.iter() {
        set.remove(d);
    }
    set.extend(added.iter());
    let step = ReductionStep { branch: label.to_string(), removed: v0, added, dropped };
    let mut trace = vec![step];
    let covered: usize = sub.trace.iter().map(|s| s.removed.len()).sum();
    if covered == rest_order {
        trace.extend(sub.trace);
    } else {
        // the residual solver gave no usable trace: treat its answer as one step
        let rest: VertexSet = g.vertices().filter(|v| !trace[0].removed.contains(*v)).collect();
        trace.push(ReductionStep {
            branch: "residual".into(),
            removed: rest,
            added: sub.set,
            dropped: VertexSet::new(),
        });
    }
    let cert = OddCertificate::new(g, set, trace, sub.fallback_used);
    verify_certificate(g, &cert)
        .map_err(|e| ReductionError::CaseTableDefect { branch: label.to_string(), detail: e.to_string() })?;
    Ok(cert)
}
