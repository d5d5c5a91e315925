use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::{dot_with_labels, Multigraph};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DecompositionError {
    #[error("bag tree has {tree_nodes} nodes but there are {bags} bags")]
    TreeSize { tree_nodes: usize, bags: usize },
    #[error("bag tree is not a tree")]
    NotATree,
    #[error("stated width {stated} differs from the bag width {actual}")]
    WidthMismatch { stated: usize, actual: usize },
    #[error("bag tree is not a path in bag order")]
    NotAPath,
}

/// Bags over graph nodes arranged on a tree. Bags are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTree")]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    tree: Multigraph,
    width: usize,
}

#[derive(Deserialize)]
struct RawTree {
    bags: Vec<Vec<usize>>,
    tree: Multigraph,
    width: usize,
}

impl TryFrom<RawTree> for TreeDecomposition {
    type Error = DecompositionError;

    fn try_from(raw: RawTree) -> Result<Self, Self::Error> {
        let td = TreeDecomposition::new(raw.bags, raw.tree)?;
        if td.width != raw.width {
            return Err(DecompositionError::WidthMismatch {
                stated: raw.width,
                actual: td.width,
            });
        }
        Ok(td)
    }
}

fn bag_width(bags: &[Vec<usize>]) -> usize {
    bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
}

fn normalize(bag: Vec<usize>) -> Vec<usize> {
    bag.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

impl TreeDecomposition {
    /// Requires `tree` to be a tree on `0..bags.len()`.
    pub fn new(bags: Vec<Vec<usize>>, tree: Multigraph) -> Result<Self, DecompositionError> {
        if tree.n_nodes() != bags.len() {
            return Err(DecompositionError::TreeSize {
                tree_nodes: tree.n_nodes(),
                bags: bags.len(),
            });
        }
        if !bags.is_empty() && (tree.n_arcs() + 1 != bags.len() || !tree.is_connected()) {
            return Err(DecompositionError::NotATree);
        }
        let bags: Vec<Vec<usize>> = bags.into_iter().map(normalize).collect();
        let width = bag_width(&bags);
        Ok(TreeDecomposition { bags, tree, width })
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn tree(&self) -> &Multigraph {
        &self.tree
    }

    /// Largest bag size minus one; zero when every bag is empty.
    pub fn width(&self) -> usize {
        self.width
    }

    /// The path decomposition this is, if the tree is the path `0 - 1 - ... - (k-1)`.
    pub fn as_path(&self) -> Option<PathDecomposition> {
        let expected: BTreeSet<(usize, usize)> = (1..self.bags.len()).map(|i| (i - 1, i)).collect();
        let actual: BTreeSet<(usize, usize)> = self.tree.arcs().iter().copied().collect();
        (expected == actual && self.tree.n_arcs() == expected.len()).then(|| PathDecomposition {
            bags: self.bags.clone(),
            width: self.width,
        })
    }

    /// True when the tree, whatever its numbering, has maximum degree two.
    pub fn is_path_shaped(&self) -> bool {
        self.tree.degrees().iter().all(|&d| d <= 2)
    }

    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = self.bags.iter().map(|b| bag_label(b)).collect();
        dot_with_labels("T", &labels, self.tree.arcs())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("decomposition serializes")
    }
}

/// `{a,c,d}` rendering of a bag.
pub fn bag_label(bag: &[usize]) -> String {
    let inner: Vec<String> = bag.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

/// Bags along the path `0 - 1 - ... - (k-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPath")]
pub struct PathDecomposition {
    bags: Vec<Vec<usize>>,
    width: usize,
}

#[derive(Deserialize)]
struct RawPath {
    bags: Vec<Vec<usize>>,
    width: usize,
}

impl TryFrom<RawPath> for PathDecomposition {
    type Error = DecompositionError;

    fn try_from(raw: RawPath) -> Result<Self, Self::Error> {
        let pd = PathDecomposition::new(raw.bags);
        if pd.width != raw.width {
            return Err(DecompositionError::WidthMismatch {
                stated: raw.width,
                actual: pd.width,
            });
        }
        Ok(pd)
    }
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        let bags: Vec<Vec<usize>> = bags.into_iter().map(normalize).collect();
        let width = bag_width(&bags);
        PathDecomposition { bags, width }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn to_tree(&self) -> TreeDecomposition {
        let k = self.bags.len();
        let tree = Multigraph::new(k, (1..k).map(|i| (i - 1, i))).expect("path arcs in range");
        TreeDecomposition::new(self.bags.clone(), tree).expect("a path is a tree")
    }
}

impl From<PathDecomposition> for TreeDecomposition {
    fn from(p: PathDecomposition) -> Self {
        p.to_tree()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum Violation {
    /// A bag names a node the graph does not have.
    NodeOutOfRange { bag: usize, node: usize },
    /// Property 1: some node lies in no bag.
    MissingNode { node: usize },
    /// Property 2: no bag holds both ends of an arc.
    UncoveredArc { a: usize, b: usize },
    /// Property 3: the bags holding a node do not form a subtree.
    DisconnectedNode { node: usize },
}

/// Outcome of checking the three decomposition properties.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

pub fn validate_decomposition(g: &Multigraph, d: &TreeDecomposition) -> Validation {
    let n = g.n_nodes();
    let mut violations = Vec::new();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in d.bags().iter().enumerate() {
        for &v in bag {
            if v >= n {
                violations.push(Violation::NodeOutOfRange { bag: i, node: v });
            } else {
                holders[v].push(i);
            }
        }
    }
    for (v, h) in holders.iter().enumerate() {
        if h.is_empty() {
            violations.push(Violation::MissingNode { node: v });
        }
    }
    let sets: Vec<BTreeSet<usize>> = d.bags().iter().map(|b| b.iter().copied().collect()).collect();
    let simple = g.simplified();
    for &(a, b) in simple.arcs() {
        if !holders[a].iter().any(|&i| sets[i].contains(&b)) {
            violations.push(Violation::UncoveredArc { a, b });
        }
    }
    // Loops need their node covered, which property 1 already checks.
    let tree_adj = d.tree().adjacency();
    for (v, h) in holders.iter().enumerate() {
        if h.len() <= 1 {
            continue;
        }
        let mut seen = BTreeSet::from([h[0]]);
        let mut stack = vec![h[0]];
        while let Some(x) = stack.pop() {
            for &y in &tree_adj[x] {
                if sets[y].contains(&v) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        if seen.len() != h.len() {
            violations.push(Violation::DisconnectedNode { node: v });
        }
    }
    Validation {
        valid: violations.is_empty(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_triangles() -> (Multigraph, TreeDecomposition) {
        // Two triangles sharing the arc 1-2 plus a pendant triangle on 2-3.
        let g = Multigraph::new(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4), (2, 4)]).unwrap();
        let td = PathDecomposition::new(vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4]]).to_tree();
        (g, td)
    }

    #[test]
    fn valid_width_two() {
        let (g, td) = three_triangles();
        let v = validate_decomposition(&g, &td);
        assert!(v.valid, "{:?}", v.violations);
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn emptied_bag_is_caught() {
        let (g, td) = three_triangles();
        let mut bags = td.bags().to_vec();
        bags[2].clear();
        let broken = TreeDecomposition::new(bags, td.tree().clone()).unwrap();
        let v = validate_decomposition(&g, &broken);
        assert!(!v.valid);
        assert!(v.violations.contains(&Violation::MissingNode { node: 4 }));
        assert!(v.violations.contains(&Violation::UncoveredArc { a: 3, b: 4 }));
    }

    #[test]
    fn disconnected_occurrence_is_caught() {
        let g = Multigraph::new(2, [(0, 1)]).unwrap();
        let td = PathDecomposition::new(vec![vec![0, 1], vec![1], vec![0]]).to_tree();
        assert_eq!(
            validate_decomposition(&g, &td).violations,
            vec![Violation::DisconnectedNode { node: 0 }]
        );
    }

    #[test]
    fn single_node() {
        let g = Multigraph::empty(1);
        let td = PathDecomposition::new(vec![vec![0]]).to_tree();
        assert!(validate_decomposition(&g, &td).valid);
        assert_eq!(td.width(), 0);
    }

    #[test]
    fn non_tree_rejected() {
        let cyc = crate::graph::cycle(3);
        assert_eq!(
            TreeDecomposition::new(vec![vec![0], vec![0], vec![0]], cyc),
            Err(DecompositionError::NotATree)
        );
    }

    #[test]
    fn json_round_trip_and_dot() {
        let (_, td) = three_triangles();
        let text = td.to_json();
        let back: TreeDecomposition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, td);
        assert!(td.to_dot().contains("label=\"{1,2,3}\""));
        assert!(td.as_path().is_some());
    }
}
