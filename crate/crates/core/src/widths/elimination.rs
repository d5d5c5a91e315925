//! Decompositions read off vertex orderings.

use std::collections::BTreeSet;

use super::decomposition::{PathDecomposition, TreeDecomposition};
use crate::graph::Multigraph;

/// Tree decomposition induced by eliminating the nodes of `g` in `order`.
///
/// The bag of `v` is `v` plus its neighbours at elimination time; it hangs
/// below the bag of the first of those neighbours to be eliminated. Bags
/// contained in an adjacent bag are then merged away.
pub fn tree_from_elimination(g: &Multigraph, order: &[usize]) -> TreeDecomposition {
    let n = g.n_nodes();
    assert_eq!(order.len(), n, "ordering must list every node once");
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = g.adjacency().into_iter().map(|r| r.into_iter().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent_node = Vec::with_capacity(n);
    for &v in order {
        let q: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in q.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &q[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        parent_node.push(q.iter().copied().min_by_key(|&u| position[u]));
        let mut bag = q;
        bag.push(v);
        bags.push(bag);
    }
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], Multigraph::empty(1)).expect("single bag");
    }
    let mut arcs = Vec::with_capacity(n - 1);
    let mut last_root: Option<usize> = None;
    for (i, p) in parent_node.iter().enumerate() {
        match p {
            Some(u) => arcs.push((i, position[*u])),
            None => {
                if let Some(r) = last_root {
                    arcs.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    contract_subset_bags(bags, arcs)
}

/// Merges every bag into an adjacent superset bag until none is left.
pub fn contract_subset_bags(bags: Vec<Vec<usize>>, arcs: Vec<(usize, usize)>) -> TreeDecomposition {
    let k = bags.len();
    let sets: Vec<BTreeSet<usize>> = bags.into_iter().map(|b| b.into_iter().collect()).collect();
    let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for &(a, b) in &arcs {
        nbrs[a].insert(b);
        nbrs[b].insert(a);
    }
    let mut alive = vec![true; k];
    let mut queue: Vec<usize> = (0..k).rev().collect();
    while let Some(a) = queue.pop() {
        if !alive[a] {
            continue;
        }
        let target = nbrs[a].iter().copied().find(|&b| sets[a].is_subset(&sets[b]));
        let Some(b) = target else { continue };
        alive[a] = false;
        let moved: Vec<usize> = nbrs[a].iter().copied().filter(|&c| c != b).collect();
        nbrs[a].clear();
        nbrs[b].remove(&a);
        for c in moved {
            nbrs[c].remove(&a);
            nbrs[c].insert(b);
            nbrs[b].insert(c);
            queue.push(c);
        }
        queue.push(b);
    }
    let mut index = vec![usize::MAX; k];
    let mut kept = Vec::new();
    for i in 0..k {
        if alive[i] {
            index[i] = kept.len();
            kept.push(sets[i].iter().copied().collect::<Vec<_>>());
        }
    }
    let mut tree = Multigraph::empty(kept.len());
    for a in 0..k {
        for &b in &nbrs[a] {
            if alive[a] && a < b {
                tree.add_arc(index[a], index[b]).expect("kept bag indices");
            }
        }
    }
    TreeDecomposition::new(kept, tree).expect("merging adjacent bags keeps a tree")
}

/// Path decomposition whose `i`-th bag is `order[i]` together with the
/// earlier nodes that still have a neighbour at position `i` or later.
pub fn path_from_ordering(g: &Multigraph, order: &[usize]) -> PathDecomposition {
    let n = g.n_nodes();
    assert_eq!(order.len(), n, "ordering must list every node once");
    if n == 0 {
        return PathDecomposition::new(vec![Vec::new()]);
    }
    let adj = g.adjacency();
    let mut remaining: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut placed = vec![false; n];
    let mut open: BTreeSet<usize> = BTreeSet::new();
    let mut bags = Vec::with_capacity(n);
    for &v in order {
        let mut bag: Vec<usize> = open.iter().copied().collect();
        bag.push(v);
        bags.push(bag);
        placed[v] = true;
        for &u in &adj[v] {
            if placed[u] {
                remaining[u] -= 1;
                remaining[v] -= 1;
                if remaining[u] == 0 {
                    open.remove(&u);
                }
            }
        }
        if remaining[v] > 0 {
            open.insert(v);
        }
    }
    // Drop bags contained in a neighbour; the rest stay in path order.
    let mut kept: Vec<Vec<usize>> = Vec::with_capacity(bags.len());
    for bag in bags.into_iter().map(|b| b.into_iter().collect::<BTreeSet<_>>()) {
        if let Some(prev) = kept.last() {
            let prev_set: BTreeSet<usize> = prev.iter().copied().collect();
            if bag.is_subset(&prev_set) {
                continue;
            }
            while let Some(prev) = kept.last() {
                if prev.iter().all(|x| bag.contains(x)) {
                    kept.pop();
                } else {
                    break;
                }
            }
        }
        kept.push(bag.into_iter().collect());
    }
    PathDecomposition::new(kept)
}
