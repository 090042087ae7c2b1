use std::collections::HashMap;

use super::MoisResult;
use crate::decomposition::{validate_nice, NiceKind, NiceTreeDecomposition};
use crate::error::{DecompositionError, SolverError};
use crate::graph::{Adjacency, Graph, Vertex, VertexSet};

const OUT: u8 = 0;
const IN0: u8 = 1;
const IN1: u8 = 2;

/// Per bag vertex (in sorted bag order): `OUT`, or included with the parity of
/// its already-forgotten included neighbors.
type State = Vec<u8>;

#[derive(Clone, Copy)]
enum Back {
    None,
    One(usize),
    Two(usize, usize),
}

struct Entry {
    state: State,
    value: usize,
    back: Back,
}

#[derive(Default)]
struct Table {
    entries: Vec<Entry>,
    index: HashMap<State, usize>,
}

impl Table {
    fn offer(&mut self, state: State, value: usize, back: Back) {
        match self.index.get(&state) {
            Some(&i) => {
                if value > self.entries[i].value {
                    self.entries[i].value = value;
                    self.entries[i].back = back;
                }
            }
            None => {
                self.index.insert(state.clone(), self.entries.len());
                self.entries.push(Entry { state, value, back });
            }
        }
    }
}

fn is_in(c: u8) -> bool {
    c != OUT
}

/// `f(G)` by dynamic programming over a nice tree decomposition.
///
/// An edge is accounted when its first endpoint is forgotten, so a Join only
/// adds parities.
pub fn mois_dp(g: &Graph, ntd: &NiceTreeDecomposition) -> Result<MoisResult, SolverError> {
    validate_nice(g, ntd).map_err(|v| DecompositionError::Invalid(v.to_string()))?;
    let nodes = ntd.nodes();
    let mut tables: Vec<Table> = Vec::with_capacity(nodes.len());

    for node in nodes {
        let bag: Vec<Vertex> = node.bag.to_vec();
        let mut t = Table::default();
        match node.kind {
            NiceKind::Leaf => t.offer(Vec::new(), 0, Back::None),
            NiceKind::Introduce(v) => {
                let pos = bag.binary_search(&v).expect("introduced vertex is in the bag");
                for (i, e) in tables[node.children[0]].entries.iter().enumerate() {
                    for (c, gain) in [(OUT, 0), (IN0, 1)] {
                        let mut s = e.state.clone();
                        s.insert(pos, c);
                        t.offer(s, e.value + gain, Back::One(i));
                    }
                }
            }
            NiceKind::Forget(v) => {
                let child = node.children[0];
                let child_bag = nodes[child].bag.to_vec();
                let pos = child_bag.binary_search(&v).expect("forgotten vertex is in the child bag");
                for (i, e) in tables[child].entries.iter().enumerate() {
                    let mut s = e.state.clone();
                    let c = s.remove(pos);
                    if is_in(c) {
                        let nbrs: Vec<usize> =
                            (0..bag.len()).filter(|&j| is_in(s[j]) && g.has_edge(v, bag[j])).collect();
                        let parity = (c == IN1) as usize + nbrs.len();
                        if parity.is_multiple_of(2) {
                            continue;
                        }
                        for j in nbrs {
                            s[j] = if s[j] == IN0 { IN1 } else { IN0 };
                        }
                    }
                    t.offer(s, e.value, Back::One(i));
                }
            }
            NiceKind::Join => {
                let (l, r) = (&tables[node.children[0]], &tables[node.children[1]]);
                // group right entries by In/Out pattern
                let mut by_pattern: HashMap<Vec<bool>, Vec<usize>> = HashMap::new();
                for (j, e) in r.entries.iter().enumerate() {
                    by_pattern.entry(e.state.iter().map(|&c| is_in(c)).collect()).or_default().push(j);
                }
                for (i, a) in l.entries.iter().enumerate() {
                    let pattern: Vec<bool> = a.state.iter().map(|&c| is_in(c)).collect();
                    let included = pattern.iter().filter(|&&b| b).count();
                    for &j in by_pattern.get(&pattern).map(Vec::as_slice).unwrap_or(&[]) {
                        let b = &r.entries[j];
                        let s: State = a
                            .state
                            .iter()
                            .zip(&b.state)
                            .map(|(&x, &y)| {
                                if x == OUT {
                                    OUT
                                } else if x == y {
                                    IN0
                                } else {
                                    IN1
                                }
                            })
                            .collect();
                        t.offer(s, a.value + b.value - included, Back::Two(i, j));
                    }
                }
            }
        }
        tables.push(t);
    }

    let root = ntd.root();
    let best = tables[root]
        .entries
        .iter()
        .enumerate()
        .max_by_key(|(i, e)| (e.value, std::cmp::Reverse(*i)))
        .map(|(i, _)| i)
        .ok_or_else(|| DecompositionError::Invalid("root has no feasible state".into()))?;

    let mut witness = VertexSet::new();
    let mut stack = vec![(root, best)];
    while let Some((n, i)) = stack.pop() {
        let node = &nodes[n];
        let e = &tables[n].entries[i];
        if let NiceKind::Introduce(v) = node.kind {
            let pos = node.bag.iter().position(|x| x == v).expect("in bag");
            if is_in(e.state[pos]) {
                witness.insert(v);
            }
        }
        match e.back {
            Back::None => {}
            Back::One(c) => stack.push((node.children[0], c)),
            Back::Two(a, b) => {
                stack.push((node.children[0], a));
                stack.push((node.children[1], b));
            }
        }
    }
    debug_assert_eq!(witness.len(), tables[root].entries[best].value);
    Ok(MoisResult::new(witness))
}
