//! One reduction step: the removed set `V0`, and the rule choosing `S0` once
//! the membership of surviving vertices in the residual solution `H'` is known.

use super::config::Local;
use crate::graph::{stats, Adjacency, Vertex};

/// Membership test for the residual solution.
pub(crate) type Member<'a> = &'a dyn Fn(Vertex) -> bool;

/// What a step contributes: `added` joins the solution, `dropped` leaves it.
/// `added` may contain a surviving vertex outside `V0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Outcome {
    pub label: &'static str,
    pub added: Vec<Vertex>,
    pub dropped: Vec<Vertex>,
}

pub(crate) type Assemble = Box<dyn Fn(Member) -> Outcome + Send + Sync>;

pub(crate) enum Plan {
    Step {
        v0: Vec<Vertex>,
        assemble: Assemble,
    },
    /// `V0` is a whole component, solved exhaustively.
    Base {
        v0: Vec<Vertex>,
        label: &'static str,
    },
}

fn out(label: &'static str, added: Vec<Vertex>) -> Outcome {
    Outcome { label, added, dropped: Vec::new() }
}

fn fixed(label: &'static str, added: Vec<Vertex>) -> Assemble {
    Box::new(move |_| out(label, added.clone()))
}

fn step(v0: Vec<Vertex>, assemble: Assemble) -> Plan {
    Plan::Step { v0, assemble }
}

/// Largest odd-size prefix.
fn odd_prefix(s: &[Vertex]) -> Vec<Vertex> {
    let k = if s.len() % 2 == 1 { s.len() } else { s.len().saturating_sub(1) };
    s[..k].to_vec()
}

/// Largest even-size prefix.
fn even_prefix(s: &[Vertex]) -> Vec<Vertex> {
    s[..s.len() & !1].to_vec()
}

fn with(mut s: Vec<Vertex>, extra: &[Vertex]) -> Vec<Vertex> {
    s.extend_from_slice(extra);
    s
}

fn cat(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    with(a.to_vec(), b)
}

/// Star on `u` and an odd number of kit vertices.
fn star(c: &Local) -> Vec<Vertex> {
    with(odd_prefix(&c.kit()), &[c.u])
}

pub(crate) fn plan<A: Adjacency>(g: &A, c: &Local) -> Plan {
    match c.w {
        None => lemma1(g, c),
        Some(_) => lemma2(g, c),
    }
}

fn lemma1<A: Adjacency>(g: &A, c: &Local) -> Plan {
    let (u, v) = (c.u, c.v);
    let kit = c.kit();
    let n1v = stats::pendants(g, v);
    let s_star = star(c);
    if n1v.len() <= 1 {
        let v0 = with(with(kit, &[u, v]), &n1v);
        return step(v0, fixed("L1/Case1", s_star));
    }
    let x = n1v[0];
    let (t1, t2) = (c.t1(), c.t2());
    if t1 == 2 && t2 == 2 && !c.uv {
        return step(with(kit, &[u]), fixed("L1/Case2/t1=t2=2", vec![c.n1u[0], u]));
    }
    let (n1u, n2uv, uv) = (c.n1u.clone(), c.n2uv.clone(), c.uv);
    step(
        with(kit, &[u, x]),
        Box::new(move |inh| {
            if !inh(v) {
                out("L1/Case2/v-out", s_star.clone())
            } else if t2 > t1 {
                let s = if t2 % 2 == 1 { cat(&n2uv, &[x]) } else { n2uv.clone() };
                out("L1/Case2/v-in/t2>t1", s)
            } else if !uv {
                out("L1/Case2/v-in/uv-absent", with(odd_prefix(&n1u), &[u]))
            } else {
                out("L1/Case2/v-in/uv-present", with(even_prefix(&n1u), &[u, x]))
            }
        }),
    )
}

fn lemma2<A: Adjacency>(g: &A, c: &Local) -> Plan {
    let (u, v, w) = (c.u, c.v, c.w.expect("two anchors"));
    let n1v = stats::pendants(g, v);
    let n1w = stats::pendants(g, w);
    let nbar: Vec<Vertex> = stats::common_deg2(g, v, w).into_iter().filter(|&z| z != u).collect();
    if n1v.is_empty() && n1w.is_empty() && nbar.is_empty() {
        return step(with(c.kit(), &[u, v, w]), fixed("L2/claim-c2", star(c)));
    }
    match (n1v.is_empty(), n1w.is_empty()) {
        (true, _) => case1(g, c, &n1w, &nbar),
        (false, true) => case1(g, &c.swapped(), &n1v, &nbar),
        (false, false) => case2(c, n1v[0], n1w[0]),
    }
}

/// `N¹(v)` is empty; `n1w` and `nbar = N²(v,w) \ {u}` are not both empty.
fn case1<A: Adjacency>(g: &A, c: &Local, n1w: &[Vertex], nbar: &[Vertex]) -> Plan {
    let (u, v, w) = (c.u, c.v, c.w.expect("two anchors"));
    let kit = c.kit();
    let r: Vec<Vertex> = g.neighbors(w).filter(|&z| z != u && z != v && !c.n2uw.contains(&z)).collect();
    let mut xs = cat(n1w, nbar);
    xs.sort_unstable();
    let x = xs[0];
    let (t1, t2, t3) = (c.t1(), c.t2(), c.t3());
    let t = t1 + t2 + t3;
    let q = t1 + t2;

    if r.len() <= 1 {
        let v0 = with(kit.clone(), &[u, v, w, x]);
        if t != 2 {
            return step(v0, fixed("L2/Case1/Sub1.1/star", star(c)));
        }
        let closes = v0.iter().all(|&a| g.neighbors(a).all(|b| v0.contains(&b)));
        if closes {
            return Plan::Base { v0, label: "L2/Case1/Sub1.1/order-six" };
        }
        if t3 == 2 {
            return step(v0, fixed("L2/Case1/Sub1.1/t3=2", cat(&c.n2uw, &[w, x])));
        }
        let v0 = with(kit, &[u, w, x]);
        let a_set: Vec<Vertex> = v0.iter().copied().filter(|&a| g.has_edge(v, a)).collect();
        let pair = a_set
            .iter()
            .enumerate()
            .find_map(|(i, &a)| a_set[i + 1..].iter().find(|&&b| !g.has_edge(a, b)).map(|&b| vec![a, b]));
        let (vw, vx, uv) = (g.has_edge(v, w), g.has_edge(v, x), c.uv);
        let k = c.n1u.iter().chain(&c.n2uw).next().copied();
        let a = c.n1u.first().copied();
        return step(
            v0,
            Box::new(move |inh| {
                if !inh(v) || (!vw && !vx) {
                    out("L2/Case1/Sub1.1/wx", vec![w, x])
                } else if let Some(p) = &pair {
                    out("L2/Case1/Sub1.1/pair", p.clone())
                } else if !uv {
                    out("L2/Case1/Sub1.1/uv-absent", k.into_iter().chain([u]).collect())
                } else {
                    out("L2/Case1/Sub1.1/fan", a.into_iter().chain([u, w, x]).collect())
                }
            }),
        );
    }

    if t3 == 2 && q == 1 {
        let n2uw = c.n2uw.clone();
        return step(
            with(kit, &[u, v]),
            Box::new(move |inh| {
                if inh(w) {
                    out("L2/Case1/Sub1.2/t3=2,q=1/w-in", n2uw.clone())
                } else {
                    out("L2/Case1/Sub1.2/t3=2,q=1/w-out", vec![u, n2uw[0]])
                }
            }),
        );
    }
    if !c.uw && q == 2 && t3 == 1 {
        let a = c.n1u.iter().chain(&c.n2uv).next().copied().expect("q = 2");
        return step(with(kit, &[u, v]), fixed("L2/Case1/Sub1.2/q=2,t3=1", vec![u, a]));
    }
    if !c.uw && q == 2 && t3 == 2 {
        let three = with(kit[..3].to_vec(), &[u]);
        if xs.len() <= 2 {
            let v0 = with(with(kit, &xs), &[u, v, w]);
            return step(v0, fixed("L2/Case1/Sub1.2/q=2,t3=2/small", three));
        }
        let y = xs[1];
        let n2uw = c.n2uw.clone();
        return step(
            with(kit, &[u, v, x, y]),
            Box::new(move |inh| {
                if inh(w) {
                    out("L2/Case1/Sub1.2/q=2,t3=2/w-in", cat(&n2uw, &[x, y]))
                } else {
                    out("L2/Case1/Sub1.2/q=2,t3=2/w-out", three.clone())
                }
            }),
        );
    }
    if !c.uw && q == 4 && t3 == 4 {
        let (n2uw, s_star) = (c.n2uw.clone(), star(c));
        return step(
            with(kit, &[u, v]),
            Box::new(move |inh| {
                if inh(w) {
                    out("L2/Case1/Sub1.2/q=4,t3=4/w-in", n2uw.clone())
                } else {
                    out("L2/Case1/Sub1.2/q=4,t3=4/w-out", s_star.clone())
                }
            }),
        );
    }

    let (s_star, n2uw, uw) = (star(c), c.n2uw.clone(), c.uw);
    let s = cat(&c.n1u, &c.n2uv);
    step(
        with(kit, &[u, v, x]),
        Box::new(move |inh| {
            if !inh(w) {
                out("L2/Case1/Sub1.2/w-out", s_star.clone())
            } else if t3 > q {
                out("L2/Case1/Sub1.2/t3>q", even_prefix(&cat(&n2uw, &[x])))
            } else if uw {
                out("L2/Case1/Sub1.2/uw-present", with(even_prefix(&s), &[u, x]))
            } else {
                out("L2/Case1/Sub1.2/uw-absent", with(odd_prefix(&s), &[u]))
            }
        }),
    )
}

/// Both anchors have pendants: `x ∈ N¹(v)`, `y ∈ N¹(w)`.
fn case2(c: &Local, x: Vertex, y: Vertex) -> Plan {
    let swapped = c.swapped();
    // parameter combinations whose generic ratio is too small, tried for
    // both orientations
    for (o, xo) in [(c, x), (&swapped, y)] {
        if let Some(p) = claim_c6(o, xo) {
            return p;
        }
    }
    for (o, xo) in [(c, x), (&swapped, y)] {
        if let Some(p) = claim_c9a(o, xo) {
            return p;
        }
    }
    for (o, xo) in [(c, x), (&swapped, y)] {
        if let Some(p) = claim_c9b(o, xo) {
            return p;
        }
    }
    let (u, v, w) = (c.u, c.v, c.w.expect("two anchors"));
    let (t1, t2, t3) = (c.t1(), c.t2(), c.t3());
    if !c.uv && !c.uw && t1 == t2 + t3 && (t1 == 2 || t1 == 4) {
        let s = with(c.n1u[..t1 - 1].to_vec(), &[u]);
        return step(with(c.kit(), &[u]), fixed("L2/Case2/uv,uw-absent,t1=t2+t3", s));
    }

    let (s_star, c, swapped) = (star(c), c.clone(), swapped);
    step(
        with(c.kit(), &[u, x, y]),
        Box::new(move |inh| {
            let (iv, iw) = (inh(v), inh(w));
            if !iv && !iw {
                return out("L2/Case2/both-out", s_star.clone());
            }
            if iw && t3 > t1 + t2 {
                return out("L2/Case2/w-heavy", even_prefix(&cat(&c.n2uw, &[y])));
            }
            if iv && t2 > t1 + t3 {
                return out("L2/Case2/v-heavy", even_prefix(&cat(&c.n2uv, &[x])));
            }
            if iv != iw {
                // orient so that the anchor in H' is `w`
                let (o, yo) = if iw { (&c, y) } else { (&swapped, x) };
                let s = cat(&o.n1u, &o.n2uv);
                return if o.uw {
                    out("L2/Case2/Sub2.1/uw-present", with(even_prefix(&s), &[u, yo]))
                } else {
                    out("L2/Case2/Sub2.1/uw-absent", with(odd_prefix(&s), &[u]))
                };
            }
            if t2 + t3 > t1 {
                let sv = even_prefix(&cat(&c.n2uv, &[x]));
                let sw = even_prefix(&cat(&c.n2uw, &[y]));
                return out("L2/Case2/Sub2.2/anchors", cat(&sv, &sw));
            }
            match (c.uv, c.uw) {
                (true, true) => out("L2/Case2/Sub2.2/i", with(odd_prefix(&c.n1u), &[u, x, y])),
                (true, false) => out("L2/Case2/Sub2.2/ii", with(even_prefix(&c.n1u), &[u, x])),
                (false, true) => out("L2/Case2/Sub2.2/iii", with(even_prefix(&c.n1u), &[u, y])),
                (false, false) => out("L2/Case2/Sub2.2/iv", with(odd_prefix(&c.n1u), &[u])),
            }
        }),
    )
}

/// A neighbor of `v` among `N²(u,v) ∪ {u}`.
fn v_partner(o: &Local) -> Option<Vertex> {
    o.n2uv.first().copied().or(o.uv.then_some(o.u))
}

/// `t3 = 2` and `t1 + t2 = 1`.
fn claim_c6(o: &Local, xo: Vertex) -> Option<Plan> {
    if !(o.t3() == 2 && o.t1() + o.t2() == 1) {
        return None;
    }
    let (u, v, w) = (o.u, o.v, o.w.expect("two anchors"));
    let n2uw = o.n2uw.clone();
    let z_out = o.n1u.iter().chain(&o.n2uv).next().copied();
    let z_in = v_partner(o);
    Some(step(
        with(o.kit(), &[u, xo]),
        Box::new(move |inh| {
            if inh(w) {
                out("L2/Case2/claim-c6/w-in", n2uw.clone())
            } else if !inh(v) {
                out("L2/Case2/claim-c6/both-out", z_out.into_iter().chain([u]).collect())
            } else {
                out("L2/Case2/claim-c6/v-in", z_in.into_iter().chain([xo]).collect())
            }
        }),
    ))
}

/// `uw ∉ E`, `t1 + t2 = 2`, `t3 = 1`.
fn claim_c9a(o: &Local, xo: Vertex) -> Option<Plan> {
    if !(!o.uw && o.t1() + o.t2() == 2 && o.t3() == 1) {
        return None;
    }
    let (u, v) = (o.u, o.v);
    let z_out = o.n1u.iter().chain(&o.n2uv).next().copied();
    let z_in = v_partner(o);
    Some(step(
        with(o.kit(), &[u, xo]),
        Box::new(move |inh| {
            if inh(v) {
                out("L2/Case2/claim-c9a/v-in", z_in.into_iter().chain([xo]).collect())
            } else {
                out("L2/Case2/claim-c9a/v-out", z_out.into_iter().chain([u]).collect())
            }
        }),
    ))
}

/// `uw ∉ E` and `t1 + t2 = t3 = p` for `p` in {2, 4}.
fn claim_c9b(o: &Local, xo: Vertex) -> Option<Plan> {
    let p = o.t3();
    if !(!o.uw && o.t1() + o.t2() == p && (p == 2 || p == 4)) {
        return None;
    }
    let (u, v, w, uv) = (o.u, o.v, o.w.expect("two anchors"), o.uv);
    let n2uw = o.n2uw.clone();
    Some(step(
        with(o.kit(), &[u]),
        Box::new(move |inh| {
            if inh(w) {
                out("L2/Case2/claim-c9b/w-in", n2uw.clone())
            } else if !uv || !inh(v) {
                out("L2/Case2/claim-c9b/w-out", with(n2uw[..p - 1].to_vec(), &[u]))
            } else if inh(xo) {
                // v trades its pendant for u
                Outcome { label: "L2/Case2/claim-c9b/swap-pendant", added: with(n2uw.clone(), &[u]), dropped: vec![xo] }
            } else {
                out("L2/Case2/claim-c9b/add-pendant", with(n2uw.clone(), &[u, xo]))
            }
        }),
    ))
}
