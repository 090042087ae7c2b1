use std::collections::BTreeSet;

use super::engine::{Defect, Recorded};
use super::plan::Outcome;
use crate::graph::Vertex;

/// Backward replay of reduction steps on dense ids. Keeps, for every vertex,
/// the number of its neighbors in the current solution so that each step is
/// checked by a local recount.
pub(crate) struct Replay<'a> {
    adj: &'a [BTreeSet<Vertex>],
    inh: Vec<bool>,
    cnt: Vec<u32>,
    removed_at: Vec<usize>,
    names: &'a [Vertex],
}

impl<'a> Replay<'a> {
    /// `names[i]` is the vertex id reported in diagnostics for dense id `i`.
    pub fn new(adj: &'a [BTreeSet<Vertex>], names: &'a [Vertex], steps: &[Recorded]) -> Self {
        Self::from_removed(adj, names, steps.iter().map(|s| s.v0.as_slice()))
    }

    pub fn from_removed<'s>(
        adj: &'a [BTreeSet<Vertex>],
        names: &'a [Vertex],
        removed: impl Iterator<Item = &'s [Vertex]>,
    ) -> Self {
        let n = adj.len();
        let mut removed_at = vec![usize::MAX; n];
        for (i, v0) in removed.enumerate() {
            for &v in v0 {
                removed_at[v] = i;
            }
        }
        Replay { adj, inh: vec![false; n], cnt: vec![0; n], removed_at, names }
    }

    pub fn apply(&mut self, i: usize, step: &Recorded) -> Result<Outcome, Defect> {
        let inh = &self.inh;
        let o = step.outcome(&|x| inh[x]);
        self.check(i, step.v0.len(), &o)?;
        Ok(o)
    }

    fn toggle(&mut self, v: Vertex, on: bool) {
        self.inh[v] = on;
        for &x in &self.adj[v] {
            if on {
                self.cnt[x] += 1;
            } else {
                self.cnt[x] -= 1;
            }
        }
    }

    /// Applies step `i` (removing `v0_len` vertices) and checks its ratio and
    /// the parity of every vertex whose neighborhood in the solution changed.
    pub fn check(&mut self, i: usize, v0_len: usize, o: &Outcome) -> Result<(), Defect> {
        self.check_parts(i, v0_len, o.label, &o.added, &o.dropped)
    }

    pub fn check_parts(
        &mut self,
        i: usize,
        v0_len: usize,
        label: &str,
        added: &[Vertex],
        dropped: &[Vertex],
    ) -> Result<(), Defect> {
        let defect = |detail: String| Defect { branch: label.to_string(), detail };
        let gain = added.len() as i64 - dropped.len() as i64;
        if 5 * gain < 2 * v0_len as i64 {
            return Err(defect(format!("ratio {gain}/{v0_len} is below 2/5")));
        }
        for &d in dropped {
            if !self.inh.get(d).copied().unwrap_or(false) || self.removed_at[d] <= i {
                return Err(defect(format!("dropped vertex {} is not in the residual solution", self.names[d])));
            }
            self.toggle(d, false);
        }
        for &a in added {
            let live = self.removed_at.get(a).is_some_and(|&r| r >= i && r != usize::MAX);
            if !live || self.inh[a] {
                return Err(defect(format!("added vertex {} is not available", self.names[a])));
            }
            self.toggle(a, true);
        }
        let adj = self.adj;
        for &z in added.iter().chain(dropped) {
            for x in std::iter::once(z).chain(adj[z].iter().copied()) {
                if self.inh[x] && self.cnt[x].is_multiple_of(2) {
                    return Err(defect(format!("vertex {} has even degree", self.names[x])));
                }
            }
        }
        Ok(())
    }

    pub fn members(&self) -> Vec<Vertex> {
        (0..self.inh.len()).filter(|&v| self.inh[v]).collect()
    }
}
