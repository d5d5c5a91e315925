//! Exact treewidth and pathwidth by searching over node subsets.
//!
//! Both solvers decide "width ≤ k" for increasing `k` between a contraction
//! lower bound and a heuristic upper bound. Sets are single machine words,
//! so a graph has at most 128 nodes after simplification.

use std::collections::HashSet;

use super::bitset::{bit, capacity, count, full, has, ones, BitGraph, Word};
use super::elimination::{path_from_ordering, tree_from_elimination};
use super::heuristic::heuristic_width;
use super::{Strategy, WidthCertificate, WidthError, WidthParameter};
use crate::graph::Multigraph;

pub const DEFAULT_EXACT_CUTOFF: usize = 20;
pub const MAX_EXACT_NODES: usize = 128;

pub fn exact_treewidth(g: &Multigraph) -> Result<WidthCertificate, WidthError> {
    exact_width(g, WidthParameter::Treewidth, DEFAULT_EXACT_CUTOFF)
}

pub fn exact_pathwidth(g: &Multigraph) -> Result<WidthCertificate, WidthError> {
    exact_width(g, WidthParameter::Pathwidth, DEFAULT_EXACT_CUTOFF)
}

/// Optimal width of the simple underlying graph of `g`.
///
/// Fails when the simplified node count exceeds `cutoff`; cutoffs above
/// [`MAX_EXACT_NODES`] behave like [`MAX_EXACT_NODES`].
pub fn exact_width(g: &Multigraph, parameter: WidthParameter, cutoff: usize) -> Result<WidthCertificate, WidthError> {
    let simple = g.simplified();
    let limit = cutoff.min(MAX_EXACT_NODES);
    if simple.n_nodes() > limit {
        return Err(WidthError::CutoffExceeded {
            nodes: simple.n_nodes(),
            cutoff: limit,
        });
    }
    let (labels, n_components) = simple.components();
    let mut order = Vec::with_capacity(simple.n_nodes());
    for c in 0..n_components {
        let members: Vec<usize> = (0..simple.n_nodes()).filter(|&v| labels[v] == c).collect();
        let local = simple.induced(&members);
        let local_order = if members.len() <= 64 {
            solve::<u64>(&local, parameter)
        } else {
            solve::<u128>(&local, parameter)
        };
        order.extend(local_order.into_iter().map(|i| members[i]));
    }
    let decomposition = match parameter {
        WidthParameter::Treewidth => tree_from_elimination(&simple, &order),
        WidthParameter::Pathwidth => path_from_ordering(&simple, &order).to_tree(),
    };
    Ok(WidthCertificate::new(parameter, true, decomposition))
}

/// An optimal ordering of a connected simple graph.
fn solve<W: Word>(g: &Multigraph, parameter: WidthParameter) -> Vec<usize> {
    let n = g.n_nodes();
    if n <= 1 {
        return (0..n).collect();
    }
    debug_assert!(n <= capacity::<W>());
    let bg = BitGraph::<W>::new(&g.adjacency());
    let upper = heuristic_width(g, parameter, Strategy::MinFill);
    let lower = contraction_lower_bound(&bg);
    for k in lower..upper.value {
        let found = match parameter {
            WidthParameter::Treewidth => TreeSearch::new(&bg, k).run(),
            WidthParameter::Pathwidth => LayoutSearch::new(&bg, k).run(),
        };
        if let Some(order) = found {
            return order;
        }
    }
    // The heuristic ordering is optimal; rebuild it so the caller can reuse the same path.
    match parameter {
        WidthParameter::Treewidth => super::heuristic::elimination_ordering(g, Strategy::MinFill),
        WidthParameter::Pathwidth => super::heuristic::layout_ordering(g, Strategy::MinFill),
    }
}

/// Minimum-degree contraction bound: treewidth is at least the minimum
/// degree of every minor, and contracting a minimum-degree node into its
/// smallest-degree neighbour produces such minors.
pub fn contraction_lower_bound<W: Word>(g: &BitGraph<W>) -> usize {
    let mut adj = g.adj.clone();
    let mut alive = full::<W>(g.n);
    let mut best = 0;
    while count(alive) >= 2 {
        let live = alive;
        let deg = |adj: &[W], v: usize| count(adj[v] & live);
        let v = ones(alive).min_by_key(|&v| (deg(&adj, v), v)).expect("alive is nonempty");
        let d = deg(&adj, v);
        best = best.max(d);
        alive = alive & !bit::<W>(v);
        if d == 0 {
            continue;
        }
        let u = ones(adj[v] & live & !bit::<W>(v))
            .min_by_key(|&u| (deg(&adj, u), u))
            .expect("v has a live neighbour");
        let merged = (adj[u] | adj[v]) & !bit::<W>(u) & !bit::<W>(v);
        adj[u] = merged;
        for w in ones(merged) {
            adj[w] = (adj[w] & !bit::<W>(v)) | bit::<W>(u);
        }
    }
    best
}

/// Depth-first search over eliminated sets with every elimination degree ≤ k.
struct TreeSearch<'a, W: Word> {
    g: &'a BitGraph<W>,
    k: usize,
    dead: HashSet<W>,
    order: Vec<usize>,
}

impl<'a, W: Word> TreeSearch<'a, W> {
    fn new(g: &'a BitGraph<W>, k: usize) -> Self {
        TreeSearch {
            g,
            k,
            dead: HashSet::new(),
            order: Vec::with_capacity(g.n),
        }
    }

    fn run(mut self) -> Option<Vec<usize>> {
        self.extend(W::zero()).then_some(self.order)
    }

    fn extend(&mut self, eliminated: W) -> bool {
        let n = self.g.n;
        let left = n - count(eliminated);
        if left <= self.k + 1 {
            self.order.extend((0..n).filter(|&v| !has(eliminated, v)));
            return true;
        }
        if self.dead.contains(&eliminated) {
            return false;
        }
        let rest = full::<W>(n) & !eliminated;
        let nbhd: Vec<(usize, W)> = ones(rest)
            .map(|v| (v, self.g.eliminated_neighbourhood(eliminated, v)))
            .collect();
        // A node whose current neighbourhood is a clique can go first; if that
        // clique is too large no ordering works from here.
        let lookup = |v: usize| nbhd.iter().find(|(u, _)| *u == v).map(|(_, q)| *q).expect("live node");
        for &(v, q) in &nbhd {
            let is_clique = ones(q).all(|u| (q & !bit::<W>(u) & !lookup(u)).is_zero());
            if is_clique {
                if count(q) > self.k {
                    self.dead.insert(eliminated);
                    return false;
                }
                self.order.push(v);
                if self.extend(eliminated | bit::<W>(v)) {
                    return true;
                }
                self.order.pop();
                self.dead.insert(eliminated);
                return false;
            }
        }
        for &(v, q) in &nbhd {
            if count(q) > self.k {
                continue;
            }
            self.order.push(v);
            if self.extend(eliminated | bit::<W>(v)) {
                return true;
            }
            self.order.pop();
        }
        self.dead.insert(eliminated);
        false
    }
}

/// Depth-first search over placed prefixes whose boundary stays ≤ k.
struct LayoutSearch<'a, W: Word> {
    g: &'a BitGraph<W>,
    k: usize,
    dead: HashSet<W>,
    order: Vec<usize>,
}

impl<'a, W: Word> LayoutSearch<'a, W> {
    fn new(g: &'a BitGraph<W>, k: usize) -> Self {
        LayoutSearch {
            g,
            k,
            dead: HashSet::new(),
            order: Vec::with_capacity(g.n),
        }
    }

    fn run(mut self) -> Option<Vec<usize>> {
        self.extend(W::zero()).then_some(self.order)
    }

    fn extend(&mut self, placed: W) -> bool {
        let n = self.g.n;
        let all = full::<W>(n);
        if placed == all {
            return true;
        }
        if self.dead.contains(&placed) {
            return false;
        }
        let here = count(self.g.boundary(placed));
        let next: Vec<(usize, usize)> = ones(all & !placed)
            .map(|v| (v, count(self.g.boundary(placed | bit::<W>(v)))))
            .collect();
        // Boundary size is submodular, so a step that does not grow it is
        // never worse than any alternative.
        let choices: Vec<usize> = match next.iter().find(|&&(_, b)| b <= here) {
            Some(&(v, _)) => vec![v],
            None => next.iter().filter(|&&(_, b)| b <= self.k).map(|&(v, _)| v).collect(),
        };
        for v in choices {
            self.order.push(v);
            if self.extend(placed | bit::<W>(v)) {
                return true;
            }
            self.order.pop();
        }
        self.dead.insert(placed);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_binary_tree, cycle, grid, path};
    use crate::widths::validate_decomposition;

    #[test]
    fn small_families() {
        assert_eq!(exact_treewidth(&complete(4)).unwrap().value, 3);
        assert_eq!(exact_treewidth(&cycle(7)).unwrap().value, 2);
        assert_eq!(exact_pathwidth(&cycle(7)).unwrap().value, 2);
        assert_eq!(exact_treewidth(&path(6)).unwrap().value, 1);
        assert_eq!(exact_pathwidth(&Multigraph::empty(1)).unwrap().value, 0);
        assert_eq!(exact_width(&complete_binary_tree(4), WidthParameter::Pathwidth, 64).unwrap().value, 2);
        let g = grid(3, 3);
        for p in [WidthParameter::Treewidth, WidthParameter::Pathwidth] {
            let c = exact_width(&g, p, 20).unwrap();
            assert_eq!(c.value, 3);
            assert!(c.exact);
            assert!(validate_decomposition(&g, &c.decomposition).valid);
        }
    }

    #[test]
    fn cutoff_is_enforced() {
        let err = exact_treewidth(&grid(5, 5)).unwrap_err();
        assert_eq!(err, WidthError::CutoffExceeded { nodes: 25, cutoff: 20 });
        assert!(matches!(
            exact_width(&Multigraph::empty(129), WidthParameter::Treewidth, 500),
            Err(WidthError::CutoffExceeded { cutoff: 128, .. })
        ));
    }

    #[test]
    fn multiarcs_and_loops_are_ignored() {
        let g = Multigraph::new(3, [(0, 1), (1, 0), (1, 1), (1, 2)]).unwrap();
        assert_eq!(exact_treewidth(&g).unwrap().value, 1);
    }

    #[test]
    fn lower_bound_on_clique_and_grid() {
        let k5 = BitGraph::<u64>::new(&complete(5).adjacency());
        assert_eq!(contraction_lower_bound(&k5), 4);
        let g = BitGraph::<u64>::new(&grid(4, 4).adjacency());
        assert!(contraction_lower_bound(&g) <= 4);
    }
}
