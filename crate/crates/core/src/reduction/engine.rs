//! Iterative reduction over a mutable copy of one component.
//!
//! The forward pass repeatedly removes a set `V0` chosen by a plan and records
//! the step; the backward pass replays the steps in reverse, each one turning
//! the solution of the smaller graph into a solution of the larger one.

use std::collections::{BTreeSet, VecDeque};

use super::config::Local;
use super::plan::{plan, Assemble, Outcome, Plan};
use super::replay::Replay;
use crate::exact::mois_brute;
use crate::graph::{Adjacency, Graph, Vertex};

/// Graph on local ids `0..n` supporting vertex deletion.
pub(crate) struct WorkGraph {
    adj: Vec<BTreeSet<Vertex>>,
    alive: Vec<bool>,
}

impl WorkGraph {
    pub fn new(adj: Vec<BTreeSet<Vertex>>) -> Self {
        let alive = vec![true; adj.len()];
        WorkGraph { adj, alive }
    }

    fn remove(&mut self, v: Vertex) {
        for x in std::mem::take(&mut self.adj[v]) {
            self.adj[x].remove(&v);
        }
        self.alive[v] = false;
    }

    fn induced(&self, vs: &[Vertex]) -> Graph {
        let keep: BTreeSet<Vertex> = vs.iter().copied().collect();
        let keep = &keep;
        let edges = vs
            .iter()
            .flat_map(|&a| self.adj[a].iter().filter(move |&&b| a < b && keep.contains(&b)).map(move |&b| (a, b)));
        Graph::with_vertices(vs.iter().copied(), edges).expect("no loops")
    }
}

impl Adjacency for WorkGraph {
    fn contains(&self, v: Vertex) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().copied()
    }

    fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(&v)
    }
}

/// A vertex outside `v0` all of whose neighbors lie in `v0`.
pub(crate) fn isolated_after<A: Adjacency>(g: &A, v0: &[Vertex]) -> Option<Vertex> {
    let inside: BTreeSet<Vertex> = v0.iter().copied().collect();
    v0.iter()
        .flat_map(|&a| g.neighbors(a))
        .filter(|z| !inside.contains(z))
        .find(|&z| g.degree(z) <= inside.len() && g.neighbors(z).all(|b| inside.contains(&b)))
}

pub(crate) enum Rule {
    Plan(Assemble),
    Fixed(&'static str, Vec<Vertex>),
    Table(Table),
}

/// Exhaustive choice of `S0` inside `members` for every membership pattern
/// of `boundary` in the residual solution.
pub(crate) struct Table {
    boundary: Vec<Vertex>,
    members: Vec<Vertex>,
    best: Vec<u32>,
}

const TABLE_MEMBERS: usize = 20;
const TABLE_BOUNDARY: usize = 6;

impl Table {
    /// `None` if the sets are too large or some pattern has no choice meeting
    /// the 2/5 ratio.
    fn build<A: Adjacency>(g: &A, members: Vec<Vertex>) -> Option<Table> {
        let k = members.len();
        let inside: BTreeSet<Vertex> = members.iter().copied().collect();
        let boundary: Vec<Vertex> = members
            .iter()
            .flat_map(|&a| g.neighbors(a))
            .filter(|b| !inside.contains(b))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if k > TABLE_MEMBERS || boundary.len() > TABLE_BOUNDARY {
            return None;
        }
        let pos = |v: Vertex| members.iter().position(|&m| m == v);
        let bpos = |v: Vertex| boundary.iter().position(|&m| m == v);
        let mut inner = vec![0u32; k];
        let mut outer = vec![0u32; k];
        for (i, &a) in members.iter().enumerate() {
            for b in g.neighbors(a) {
                match pos(b) {
                    Some(j) => inner[i] |= 1 << j,
                    None => outer[i] |= 1 << bpos(b).expect("boundary"),
                }
            }
        }
        let patterns = 1usize << boundary.len();
        let mut best = vec![0u32; patterns];
        let mut best_len = vec![0u32; patterns];
        for s in 1u32..(1 << k) {
            let len = s.count_ones();
            // boundary vertices with an odd number of neighbors in s
            let mut odd_b = 0u32;
            let mut bits = s;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                odd_b ^= outer[i];
            }
            for p in 0..patterns as u32 {
                if p & odd_b != 0 || len <= best_len[p as usize] {
                    continue;
                }
                let mut ok = true;
                let mut bits = s;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if ((inner[i] & s).count_ones() + (outer[i] & p).count_ones()).is_multiple_of(2) {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    best[p as usize] = s;
                    best_len[p as usize] = len;
                }
            }
        }
        best_len.iter().all(|&l| 5 * l as usize >= 2 * k).then_some(Table { boundary, members, best })
    }

    fn outcome(&self, inh: &dyn Fn(Vertex) -> bool) -> Outcome {
        let p = self.boundary.iter().enumerate().filter(|(_, &b)| inh(b)).fold(0, |p, (i, _)| p | 1 << i);
        let s = self.best[p];
        let added = self.members.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).map(|(_, &m)| m).collect();
        Outcome { label: "local/brute", added, dropped: Vec::new() }
    }
}

pub(crate) struct Recorded {
    pub v0: Vec<Vertex>,
    pub rule: Rule,
}

impl Recorded {
    pub fn outcome(&self, inh: &dyn Fn(Vertex) -> bool) -> Outcome {
        match &self.rule {
            Rule::Plan(f) => f(inh),
            Rule::Fixed(label, s) => Outcome { label, added: s.clone(), dropped: Vec::new() },
            Rule::Table(t) => t.outcome(inh),
        }
    }
}

/// A step that could not be carried out or assembled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Defect {
    pub branch: String,
    pub detail: String,
}

pub(crate) struct Solved {
    pub steps: Vec<Recorded>,
    pub outcomes: Vec<Outcome>,
    pub set: Vec<Vertex>,
}

/// Residual components up to this order are checked against the 2/5 bound.
const DEFICIENT_ORDER: usize = 6;

fn degree_class(d: usize) -> usize {
    d.min(3)
}

struct Engine {
    g: WorkGraph,
    base: usize,
    queue: VecDeque<Vertex>,
    queued: Vec<bool>,
    steps: Vec<Recorded>,
}

impl Engine {
    fn push(&mut self, v: Vertex) {
        if self.g.alive[v] && !self.queued[v] {
            self.queued[v] = true;
            self.queue.push_back(v);
        }
    }

    /// The component of `z` if it has at most `limit` vertices.
    fn small_component(&self, z: Vertex, limit: usize) -> Option<Vec<Vertex>> {
        self.small_component_avoiding(z, &[], limit)
    }

    /// The component of `z` in the graph without `avoid`, if it has at most
    /// `limit` vertices.
    fn small_component_avoiding(&self, z: Vertex, avoid: &[Vertex], limit: usize) -> Option<Vec<Vertex>> {
        let mut seen = vec![z];
        let mut i = 0;
        while i < seen.len() {
            for b in self.g.neighbors(seen[i]) {
                if !seen.contains(&b) && !avoid.contains(&b) {
                    seen.push(b);
                    if seen.len() > limit {
                        return None;
                    }
                }
            }
            i += 1;
        }
        Some(seen)
    }

    fn remove_all(&mut self, v0: &[Vertex]) {
        let mut touched: Vec<(Vertex, usize)> = Vec::new();
        for &a in v0 {
            for b in self.g.neighbors(a) {
                touched.push((b, self.g.degree(b)));
            }
        }
        for &a in v0 {
            self.g.remove(a);
        }
        touched.sort_unstable();
        touched.dedup_by_key(|(b, _)| *b);
        for (b, before) in touched {
            if !self.g.alive[b] {
                continue;
            }
            self.push(b);
            let d = self.g.degree(b);
            if degree_class(d) != degree_class(before) || d <= 2 {
                let ns: Vec<Vertex> = self.g.neighbors(b).collect();
                for x in ns {
                    self.push(x);
                }
            }
        }
    }

    fn record(&mut self, v0: Vec<Vertex>, rule: Rule) {
        self.remove_all(&v0);
        self.steps.push(Recorded { v0, rule });
    }

    /// Records a step unless removing `v0` leaves a component whose optimum
    /// is below 2/5. Such components are merged into `V0`, and `S0` is then
    /// chosen by table; `false` if no table meets the ratio.
    fn record_checked(&mut self, v0: Vec<Vertex>, rule: Rule, label: &str) -> Result<bool, Defect> {
        let mut deficient: Vec<Vertex> = Vec::new();
        let outside: BTreeSet<Vertex> =
            v0.iter().flat_map(|&a| self.g.neighbors(a)).filter(|b| !v0.contains(b)).collect();
        for z in outside {
            if deficient.contains(&z) {
                continue;
            }
            if let Some(comp) = self.small_component_avoiding(z, &v0, DEFICIENT_ORDER) {
                let sub = self.g.induced(&comp);
                let f = mois_brute(&sub).map_err(|e| Defect { branch: label.into(), detail: e.to_string() })?.size;
                if 5 * f < 2 * comp.len() {
                    deficient.extend(comp);
                }
            }
        }
        if deficient.is_empty() {
            self.record(v0, rule);
            return Ok(true);
        }
        let members = with_all(v0, &deficient);
        match Table::build(&self.g, members.clone()) {
            Some(table) => {
                self.record(members, Rule::Table(table));
                Ok(true)
            }
            None => Ok(false),
        }
    }

    fn brute(&self, label: &'static str, comp: Vec<Vertex>) -> Result<(Vec<Vertex>, Rule), Defect> {
        let sub = self.g.induced(&comp);
        let r = mois_brute(&sub).map_err(|e| Defect { branch: label.into(), detail: e.to_string() })?;
        Ok((comp, Rule::Fixed(label, r.witness.to_vec())))
    }

    /// A plan at `u` whose removal leaves no isolated vertex; when the plan at
    /// `u` would isolate an anchor, the configuration at that anchor is used.
    fn plan_at(&self, u: Vertex) -> Result<Option<(Vec<Vertex>, Rule)>, Defect> {
        let Some(local) = Local::at(&self.g, u) else {
            return Ok(None);
        };
        let mut current = local;
        for _ in 0..3 {
            match plan(&self.g, &current) {
                Plan::Base { v0, label } => return self.brute(label, v0).map(Some),
                Plan::Step { v0, assemble } => match isolated_after(&self.g, &v0) {
                    None => return Ok(Some((v0, Rule::Plan(assemble)))),
                    Some(z) => {
                        current = Local::at(&self.g, z).ok_or_else(|| Defect {
                            branch: format!("config at {}", current.u),
                            detail: format!("removing V0 isolates {z}, which has no configuration"),
                        })?;
                    }
                },
            }
        }
        Err(Defect { branch: format!("config at {u}"), detail: "reroute loop".into() })
    }

    fn process(&mut self, z: Vertex) -> Result<bool, Defect> {
        if let Some(comp) = self.small_component(z, self.base) {
            let (v0, rule) = self.brute("base/brute", comp)?;
            self.record(v0, rule);
            return Ok(true);
        }
        if self.g.degree(z) >= 1 && self.g.neighbors(z).all(|x| self.g.degree(x) == 1) {
            let mut leaves: Vec<Vertex> = self.g.neighbors(z).collect();
            let keep = if leaves.len() % 2 == 1 { leaves.len() } else { leaves.len() - 1 };
            let s = with_center(leaves[..keep].to_vec(), z);
            leaves.push(z);
            return self.record_checked(leaves, Rule::Fixed("star", s), "star");
        }
        match self.plan_at(z)? {
            Some((v0, rule)) => self.record_checked(v0, rule, &format!("config at {z}")),
            None => Ok(false),
        }
    }
}

fn with_all(mut s: Vec<Vertex>, extra: &[Vertex]) -> Vec<Vertex> {
    s.extend_from_slice(extra);
    s
}

fn with_center(mut s: Vec<Vertex>, c: Vertex) -> Vec<Vertex> {
    s.push(c);
    s
}

/// Reduces a connected graph without isolated vertices to nothing and
/// assembles an odd set, checking every step on the way back.
pub(crate) fn solve(adj: Vec<BTreeSet<Vertex>>, names: &[Vertex], base: usize) -> Result<Solved, Defect> {
    let n = adj.len();
    let original = adj.clone();
    let mut e =
        Engine { g: WorkGraph::new(adj), base, queue: (0..n).collect(), queued: vec![true; n], steps: Vec::new() };
    loop {
        while let Some(z) = e.queue.pop_front() {
            e.queued[z] = false;
            if e.g.alive[z] {
                e.process(z)?;
            }
        }
        // safety net against a missed wake-up: rescan once per stall
        let alive: Vec<Vertex> = (0..n).filter(|&v| e.g.alive[v]).collect();
        if alive.is_empty() {
            break;
        }
        let mut progressed = false;
        for v in alive {
            if e.g.alive[v] && e.process(v)? {
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Err(Defect {
                branch: "structure exhaustion".into(),
                detail: format!("{} vertices left without a configuration", e.g.alive.iter().filter(|&&a| a).count()),
            });
        }
    }

    let mut replay = Replay::new(&original, names, &e.steps);
    let mut outcomes = Vec::with_capacity(e.steps.len());
    for i in (0..e.steps.len()).rev() {
        let o = replay.apply(i, &e.steps[i])?;
        outcomes.push(o);
    }
    outcomes.reverse();
    Ok(Solved { set: replay.members(), steps: e.steps, outcomes })
}
