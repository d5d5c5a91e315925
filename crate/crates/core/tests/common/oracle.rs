//! Exhaustive width oracles written independently of the library solvers.

use std::collections::HashMap;

/// Adjacency matrix of a simple graph.
pub type Adj = Vec<Vec<bool>>;

pub fn adjacency(n: usize, arcs: &[(usize, usize)]) -> Adj {
    let mut m = vec![vec![false; n]; n];
    for &(a, b) in arcs {
        if a != b {
            m[a][b] = true;
            m[b][a] = true;
        }
    }
    m
}

/// Minimum over elimination orderings of the largest elimination degree,
/// eliminating explicitly with fill edges and memoising on the remaining set.
pub fn treewidth(adj: &Adj) -> usize {
    let n = adj.len();
    if n == 0 {
        return 0;
    }
    let mut memo = HashMap::new();
    tw_rec(adj.clone(), (1u32 << n) - 1, &mut memo)
}

fn tw_rec(adj: Adj, remaining: u32, memo: &mut HashMap<u32, usize>) -> usize {
    if remaining.count_ones() <= 1 {
        return 0;
    }
    if let Some(&v) = memo.get(&remaining) {
        return v;
    }
    let n = adj.len();
    let mut best = usize::MAX;
    for v in 0..n {
        if remaining & (1 << v) == 0 {
            continue;
        }
        let nbrs: Vec<usize> = (0..n).filter(|&u| remaining & (1 << u) != 0 && adj[v][u]).collect();
        if nbrs.len() >= best {
            continue;
        }
        let mut next = adj.clone();
        for &a in &nbrs {
            for &b in &nbrs {
                if a != b {
                    next[a][b] = true;
                }
            }
        }
        let rest = tw_rec(next, remaining & !(1 << v), memo);
        best = best.min(nbrs.len().max(rest));
    }
    memo.insert(remaining, best);
    best
}

/// Minimum over node orderings of the largest number of placed nodes that
/// still have an unplaced neighbour.
pub fn pathwidth(adj: &Adj) -> usize {
    let n = adj.len();
    if n == 0 {
        return 0;
    }
    let mut memo = HashMap::new();
    pw_rec(adj, 0, &mut memo)
}

fn separator(adj: &Adj, placed: u32) -> usize {
    let n = adj.len();
    (0..n)
        .filter(|&u| placed & (1 << u) != 0 && (0..n).any(|w| placed & (1 << w) == 0 && adj[u][w]))
        .count()
}

fn pw_rec(adj: &Adj, placed: u32, memo: &mut HashMap<u32, usize>) -> usize {
    let n = adj.len();
    if placed == (1u32 << n) - 1 {
        return 0;
    }
    if let Some(&v) = memo.get(&placed) {
        return v;
    }
    let mut best = usize::MAX;
    for v in 0..n {
        if placed & (1 << v) != 0 {
            continue;
        }
        let next = placed | (1 << v);
        let cost = separator(adj, next).max(pw_rec(adj, next, memo));
        best = best.min(cost);
    }
    memo.insert(placed, best);
    best
}
