use std::collections::VecDeque;

use super::{validate_shape, NiceKind, NiceNode, NiceTreeDecomposition, TreeDecomposition};
use crate::error::DecompositionError;
use crate::graph::VertexSet;

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NiceKind, bag: VertexSet, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    fn leaf(&mut self) -> usize {
        self.push(NiceKind::Leaf, VertexSet::new(), Vec::new())
    }

    /// Forget/introduce chain from node `from` up to a node whose bag is `target`.
    fn morph(&mut self, mut from: usize, target: &VertexSet) -> usize {
        let start = self.nodes[from].bag.clone();
        for v in start.iter().filter(|&v| !target.contains(v)) {
            let mut bag = self.nodes[from].bag.clone();
            bag.remove(v);
            from = self.push(NiceKind::Forget(v), bag, vec![from]);
        }
        for v in target.iter().filter(|&v| !start.contains(v)) {
            let mut bag = self.nodes[from].bag.clone();
            bag.insert(v);
            from = self.push(NiceKind::Introduce(v), bag, vec![from]);
        }
        from
    }
}

/// Converts a decomposition into nice form rooted at node 0, ending in an
/// empty root bag.
pub fn to_nice(td: &TreeDecomposition) -> Result<NiceTreeDecomposition, DecompositionError> {
    validate_shape(td).map_err(|v| DecompositionError::Invalid(v.to_string()))?;
    let mut b = Builder { nodes: Vec::new() };
    let k = td.node_count();
    if k == 0 {
        b.leaf();
        return Ok(NiceTreeDecomposition { nodes: b.nodes });
    }

    let adj = td.adjacency();
    let mut parent = vec![usize::MAX; k];
    let mut order = Vec::with_capacity(k);
    let mut queue = VecDeque::from([0usize]);
    parent[0] = 0;
    while let Some(t) = queue.pop_front() {
        order.push(t);
        for &s in &adj[t] {
            if parent[s] == usize::MAX {
                parent[s] = t;
                queue.push_back(s);
            }
        }
    }
    let mut children = vec![Vec::new(); k];
    for &t in &order[1..] {
        children[parent[t]].push(t);
    }

    // nice node carrying bag(t), for each processed tree node t
    let mut top = vec![usize::MAX; k];
    for &t in order.iter().rev() {
        let bag = td.bag(t);
        let mut branches: Vec<usize> = if children[t].is_empty() {
            let leaf = b.leaf();
            vec![b.morph(leaf, bag)]
        } else {
            children[t].iter().map(|&c| b.morph(top[c], bag)).collect()
        };
        let mut acc = branches.remove(0);
        for other in branches {
            acc = b.push(NiceKind::Join, bag.clone(), vec![acc, other]);
        }
        top[t] = acc;
    }
    b.morph(top[0], &VertexSet::new());
    Ok(NiceTreeDecomposition { nodes: b.nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{recognize_tw2, validate_nice};
    use crate::graph::Graph;

    #[test]
    fn single_bag_k2() {
        let k2 = Graph::from_edges([(0, 1)]).unwrap();
        let td = TreeDecomposition::new(vec![VertexSet::from([0, 1])], vec![]);
        let ntd = to_nice(&td).unwrap();
        let kinds: Vec<NiceKind> = ntd.nodes().iter().map(|n| n.kind).collect();
        assert_eq!(
            kinds,
            vec![
                NiceKind::Leaf,
                NiceKind::Introduce(0),
                NiceKind::Introduce(1),
                NiceKind::Forget(0),
                NiceKind::Forget(1)
            ]
        );
        assert_eq!(validate_nice(&k2, &ntd), Ok(()));
    }

    #[test]
    fn cycle_nice_form_validates() {
        let c5 = Graph::from_edges((0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let td = recognize_tw2(&c5).decomposition().unwrap();
        let ntd = to_nice(&td).unwrap();
        assert_eq!(validate_nice(&c5, &ntd), Ok(()));
        assert_eq!(ntd.width(), td.width());
    }

    #[test]
    fn path_of_bags_has_no_join() {
        let g = Graph::from_edges([(0, 1), (1, 2), (0, 2), (2, 3), (1, 3)]).unwrap();
        let td = TreeDecomposition::new(vec![VertexSet::from([0, 1, 2]), VertexSet::from([1, 2, 3])], vec![(0, 1)]);
        let ntd = to_nice(&td).unwrap();
        assert_eq!(ntd.join_count(), 0);
        assert_eq!(validate_nice(&g, &ntd), Ok(()));
    }

    #[test]
    fn star_of_bags_uses_joins() {
        let g = Graph::from_edges([(0, 1), (0, 2), (0, 3)]).unwrap();
        let td = TreeDecomposition::new(
            vec![VertexSet::from([0]), VertexSet::from([0, 1]), VertexSet::from([0, 2]), VertexSet::from([0, 3])],
            vec![(0, 1), (0, 2), (0, 3)],
        );
        let ntd = to_nice(&td).unwrap();
        assert_eq!(ntd.join_count(), 2);
        assert_eq!(validate_nice(&g, &ntd), Ok(()));
    }

    #[test]
    fn rejects_invalid_input() {
        let td = TreeDecomposition::new(vec![VertexSet::from([0]), VertexSet::from([1])], vec![]);
        assert!(matches!(to_nice(&td), Err(DecompositionError::Invalid(_))));
    }
}
