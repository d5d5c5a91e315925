//! Greedy orderings. Ties always go to the lowest node index.

use std::collections::BTreeSet;

use super::{Strategy, WidthCertificate, WidthParameter};
use super::elimination::{path_from_ordering, tree_from_elimination};
use crate::graph::Multigraph;

/// Elimination ordering by minimum degree or minimum fill-in.
pub fn elimination_ordering(g: &Multigraph, strategy: Strategy) -> Vec<usize> {
    let n = g.n_nodes();
    let mut adj: Vec<BTreeSet<usize>> = g.adjacency().into_iter().map(|r| r.into_iter().collect()).collect();
    let fill = |adj: &[BTreeSet<usize>], v: usize| -> usize {
        let q: Vec<usize> = adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in q.iter().enumerate() {
            missing += q[i + 1..].iter().filter(|b| !adj[a].contains(b)).count();
        }
        missing
    };
    let score = |adj: &[BTreeSet<usize>], v: usize| match strategy {
        Strategy::MinDegree => adj[v].len(),
        Strategy::MinFill => fill(adj, v),
    };
    let mut keys: Vec<usize> = (0..n).map(|v| score(&adj, v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (keys[v], v)).collect();
    let mut order = Vec::with_capacity(n);
    while let Some((_, v)) = queue.pop_first() {
        order.push(v);
        let q: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in q.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &q[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();
        // Scores can change within distance two of the eliminated node.
        let mut touched: BTreeSet<usize> = q.iter().copied().collect();
        if strategy == Strategy::MinFill {
            for &a in &q {
                touched.extend(adj[a].iter().copied());
            }
        }
        for u in touched {
            let fresh = score(&adj, u);
            if fresh != keys[u] {
                queue.remove(&(keys[u], u));
                keys[u] = fresh;
                queue.insert((fresh, u));
            }
        }
    }
    order
}

/// Layout that grows the placed set while keeping its boundary small.
pub fn layout_ordering(g: &Multigraph, strategy: Strategy) -> Vec<usize> {
    let n = g.n_nodes();
    let adj = g.adjacency();
    let mut placed = vec![false; n];
    // Unplaced neighbours of each node.
    let mut pending: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut touched = vec![false; n];
    let mut candidates: BTreeSet<usize> = BTreeSet::new();
    let mut boundary = 0usize;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let pool: Vec<usize> = if candidates.is_empty() {
            (0..n).filter(|&v| !placed[v]).collect()
        } else {
            candidates.iter().copied().collect()
        };
        let key = |v: usize| {
            let closes = adj[v].iter().filter(|&&u| placed[u] && pending[u] == 1).count();
            let after = boundary + usize::from(pending[v] > 0) - closes;
            match strategy {
                Strategy::MinDegree => (after, pending[v], v),
                Strategy::MinFill => {
                    let opened = adj[v].iter().filter(|&&u| !placed[u] && !touched[u]).count();
                    (opened, after, v)
                }
            }
        };
        let v = pool.into_iter().min_by_key(|&v| key(v)).expect("an unplaced node remains");
        let closes = adj[v].iter().filter(|&&u| placed[u] && pending[u] == 1).count();
        boundary = boundary + usize::from(pending[v] > 0) - closes;
        placed[v] = true;
        candidates.remove(&v);
        order.push(v);
        for &u in &adj[v] {
            pending[u] -= 1;
            touched[u] = true;
            if !placed[u] {
                candidates.insert(u);
            }
        }
    }
    order
}

/// Upper bound from a greedy ordering on the simple underlying graph.
pub fn heuristic_width(g: &Multigraph, parameter: WidthParameter, strategy: Strategy) -> WidthCertificate {
    let simple = g.simplified();
    let decomposition = match parameter {
        WidthParameter::Treewidth => tree_from_elimination(&simple, &elimination_ordering(&simple, strategy)),
        WidthParameter::Pathwidth => path_from_ordering(&simple, &layout_ordering(&simple, strategy)).to_tree(),
    };
    WidthCertificate::new(parameter, false, decomposition)
}
