//! Undirected multigraphs with loops.

mod families;
mod pace;

pub use families::{complete, complete_binary_tree, cycle, grid, path, star};
pub use pace::parse_pace;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::unionfind::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("arc ({a}, {b}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { a: usize, b: usize, n: usize },
    #[error("line {line}: {message}")]
    Pace { line: usize, message: String },
}

/// Nodes `0..n_nodes` and a multiset of unordered arcs.
///
/// Arcs are stored as `(min, max)` in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMultigraph")]
pub struct Multigraph {
    n_nodes: usize,
    arcs: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawMultigraph {
    n_nodes: usize,
    arcs: Vec<(usize, usize)>,
}

impl TryFrom<RawMultigraph> for Multigraph {
    type Error = GraphError;

    fn try_from(raw: RawMultigraph) -> Result<Self, Self::Error> {
        Multigraph::new(raw.n_nodes, raw.arcs)
    }
}

impl Multigraph {
    pub fn new(n_nodes: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Multigraph::empty(n_nodes);
        for (a, b) in arcs {
            g.add_arc(a, b)?;
        }
        Ok(g)
    }

    pub fn empty(n_nodes: usize) -> Self {
        Multigraph {
            n_nodes,
            arcs: Vec::new(),
        }
    }

    pub fn add_arc(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        if a >= self.n_nodes || b >= self.n_nodes {
            return Err(GraphError::EndpointOutOfRange { a, b, n: self.n_nodes });
        }
        self.arcs.push((a.min(b), a.max(b)));
        Ok(())
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Loops contribute two to the degree of their node.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_nodes];
        for &(a, b) in &self.arcs {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn degree(&self, v: usize) -> usize {
        self.arcs.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum()
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.degrees().iter().all(|&x| x == d)
    }

    /// Sorted neighbour lists of the underlying simple graph.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![BTreeSet::new(); self.n_nodes];
        for &(a, b) in &self.arcs {
            if a != b {
                sets[a].insert(b);
                sets[b].insert(a);
            }
        }
        sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Component label per node, numbered by first appearance, and the count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.n_nodes);
        for &(a, b) in &self.arcs {
            uf.union(a, b);
        }
        uf.labels()
    }

    pub fn n_components(&self) -> usize {
        self.components().1
    }

    /// A graph with no nodes counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n_components() <= 1
    }

    /// First Betti number `|arcs| - |nodes| + components`.
    pub fn betti_number(&self) -> usize {
        self.arcs.len() + self.n_components() - self.n_nodes
    }

    /// Loops dropped, parallel arcs merged, arcs sorted.
    pub fn simplified(&self) -> Multigraph {
        let set: BTreeSet<(usize, usize)> = self.arcs.iter().copied().filter(|&(a, b)| a != b).collect();
        Multigraph {
            n_nodes: self.n_nodes,
            arcs: set.into_iter().collect(),
        }
    }

    pub fn is_simple(&self) -> bool {
        let set: BTreeSet<_> = self.arcs.iter().collect();
        set.len() == self.arcs.len() && self.arcs.iter().all(|&(a, b)| a != b)
    }

    /// The subgraph induced on `keep`, renumbered in the order given.
    pub fn induced(&self, keep: &[usize]) -> Multigraph {
        let mut index = vec![usize::MAX; self.n_nodes];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(a, b)| index[a] != usize::MAX && index[b] != usize::MAX)
            .map(|&(a, b)| (index[a], index[b]));
        Multigraph::new(keep.len(), arcs).expect("induced arcs stay in range")
    }

    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = (0..self.n_nodes).map(|v| v.to_string()).collect();
        dot_with_labels("G", &labels, &self.arcs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("multigraph serializes")
    }
}

/// Renders an undirected graph in DOT with the given node labels.
pub fn dot_with_labels(name: &str, labels: &[String], arcs: &[(usize, usize)]) -> String {
    let mut out = format!("graph {name} {{\n");
    for (v, label) in labels.iter().enumerate() {
        let _ = writeln!(out, "  {v} [label=\"{}\"];", label.replace('"', "\\\""));
    }
    for &(a, b) in arcs {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loops_count_twice() {
        let g = Multigraph::new(2, [(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.degrees(), vec![4, 2]);
        assert_eq!(g.degree(0), 4);
        assert_eq!(g.betti_number(), 2);
        assert_eq!(g.simplified().arcs(), &[(0, 1)]);
    }

    #[test]
    fn endpoints_checked() {
        assert_eq!(
            Multigraph::new(2, [(0, 2)]).unwrap_err(),
            GraphError::EndpointOutOfRange { a: 0, b: 2, n: 2 }
        );
        assert!(serde_json::from_str::<Multigraph>(r#"{"n_nodes":1,"arcs":[[0,1]]}"#).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(Multigraph::empty(0).is_connected());
        assert!(Multigraph::empty(1).is_connected());
        assert!(!Multigraph::empty(2).is_connected());
        let g = Multigraph::new(3, [(0, 1), (2, 1)]).unwrap();
        assert!(g.is_connected());
        assert_eq!(g.arcs(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn json_round_trip() {
        let g = Multigraph::new(3, [(2, 0), (1, 1)]).unwrap();
        let text = g.to_json();
        let back: Multigraph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn dot_lists_every_arc() {
        let dot = Multigraph::new(2, [(0, 1), (0, 1)]).unwrap().to_dot();
        assert_eq!(dot.matches("0 -- 1;").count(), 2);
        assert!(dot.starts_with("graph G {"));
    }

    #[test]
    fn induced_subgraph() {
        let g = complete(4);
        let h = g.induced(&[3, 1]);
        assert_eq!(h.n_nodes(), 2);
        assert_eq!(h.arcs(), &[(0, 1)]);
    }
}
