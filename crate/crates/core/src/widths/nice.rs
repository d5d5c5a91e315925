//! Nice tree decompositions: every bag is a leaf, introduces or forgets one
//! node, or joins two children with identical contents.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::decomposition::{bag_label, TreeDecomposition};
use crate::graph::{dot_with_labels, Multigraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BagKind {
    Leaf,
    Introduce,
    Forget,
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceBag {
    pub bag_kind: BagKind,
    pub children: Vec<usize>,
    pub vertices: Vec<usize>,
}

/// Rooted nice decomposition; children are listed by bag index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceTreeDecomposition {
    pub bags: Vec<NiceBag>,
    pub join_bags: usize,
    pub root: usize,
    pub width: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NiceError {
    #[error("bag {bag}: {message}")]
    Shape { bag: usize, message: String },
    #[error("stored join count {stored} differs from the {actual} join bags present")]
    JoinCount { stored: usize, actual: usize },
}

impl NiceTreeDecomposition {
    pub fn join_count(&self) -> usize {
        self.bags.iter().filter(|b| b.bag_kind == BagKind::Join).count()
    }

    /// Checks the local shape of every bag against its children.
    pub fn check(&self) -> Result<(), NiceError> {
        let shape = |bag: usize, message: &str| NiceError::Shape {
            bag,
            message: message.to_string(),
        };
        let mut parents = vec![0usize; self.bags.len()];
        for (i, b) in self.bags.iter().enumerate() {
            let here: BTreeSet<usize> = b.vertices.iter().copied().collect();
            let kids: Vec<BTreeSet<usize>> = b
                .children
                .iter()
                .map(|&c| {
                    parents[c] += 1;
                    self.bags[c].vertices.iter().copied().collect()
                })
                .collect();
            match (b.bag_kind, kids.as_slice()) {
                (BagKind::Leaf, []) if here.len() <= 1 => {}
                (BagKind::Introduce, [c]) if c.is_subset(&here) && here.len() == c.len() + 1 => {}
                (BagKind::Forget, [c]) if here.is_subset(c) && here.len() + 1 == c.len() => {}
                (BagKind::Join, [a, b]) if *a == here && *b == here => {}
                _ => return Err(shape(i, "contents do not match the bag kind")),
            }
        }
        for (i, &p) in parents.iter().enumerate() {
            let want = usize::from(i != self.root);
            if p != want {
                return Err(shape(i, "bag does not have exactly one parent"));
            }
        }
        let actual = self.join_count();
        if actual != self.join_bags {
            return Err(NiceError::JoinCount {
                stored: self.join_bags,
                actual,
            });
        }
        Ok(())
    }

    /// The underlying (unrooted) tree decomposition.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags: Vec<Vec<usize>> = self.bags.iter().map(|b| b.vertices.clone()).collect();
        let mut tree = Multigraph::empty(bags.len());
        for (i, b) in self.bags.iter().enumerate() {
            for &c in &b.children {
                tree.add_arc(c, i).expect("child index in range");
            }
        }
        TreeDecomposition::new(bags, tree).expect("nice decompositions are trees")
    }

    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = self
            .bags
            .iter()
            .map(|b| format!("{:?} {}", b.bag_kind, bag_label(&b.vertices)).to_lowercase())
            .collect();
        let arcs: Vec<(usize, usize)> = self
            .bags
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.children.iter().map(move |&c| (i, c)))
            .collect();
        dot_with_labels("N", &labels, &arcs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("nice decomposition serializes")
    }
}

pub fn count_join_bags(n: &NiceTreeDecomposition) -> usize {
    n.join_count()
}

struct Builder {
    bags: Vec<NiceBag>,
}

impl Builder {
    fn push(&mut self, bag_kind: BagKind, children: Vec<usize>, vertices: &BTreeSet<usize>) -> usize {
        self.bags.push(NiceBag {
            bag_kind,
            children,
            vertices: vertices.iter().copied().collect(),
        });
        self.bags.len() - 1
    }

    fn leaf(&mut self, target: &BTreeSet<usize>) -> usize {
        let start: BTreeSet<usize> = target.iter().next().copied().into_iter().collect();
        let id = self.push(BagKind::Leaf, Vec::new(), &start);
        self.walk(id, start, target)
    }

    /// Forgets, then introduces, one node at a time from `top` (holding `from`) to `to`.
    fn walk(&mut self, mut top: usize, from: BTreeSet<usize>, to: &BTreeSet<usize>) -> usize {
        let mut current = from;
        let gone: Vec<usize> = current.difference(to).copied().collect();
        for v in gone {
            current.remove(&v);
            top = self.push(BagKind::Forget, vec![top], &current);
        }
        let fresh: Vec<usize> = to.difference(&current).copied().collect();
        for v in fresh {
            current.insert(v);
            top = self.push(BagKind::Introduce, vec![top], &current);
        }
        top
    }
}

/// Converts a tree decomposition into a nice one of the same width.
///
/// Equal adjacent bags are merged first. The tree is rooted at bag 0, or
/// at its lowest-index endpoint when it is a path, in which case no join
/// bags arise.
pub fn to_nice(d: &TreeDecomposition) -> NiceTreeDecomposition {
    let (bags, adj) = merge_equal_neighbours(d);
    let k = bags.len();
    let root = if adj.iter().all(|a| a.len() <= 2) {
        (0..k).find(|&i| adj[i].len() <= 1).unwrap_or(0)
    } else {
        0
    };
    // Iterative DFS preorder so long paths do not exhaust the stack.
    let mut parent = vec![usize::MAX; k];
    let mut preorder = Vec::with_capacity(k);
    let mut stack = vec![root];
    let mut seen = vec![false; k];
    seen[root] = true;
    while let Some(x) = stack.pop() {
        preorder.push(x);
        for &y in adj[x].iter().rev() {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut b = Builder { bags: Vec::new() };
    let mut top = vec![usize::MAX; k];
    for &x in preorder.iter().rev() {
        let here = &bags[x];
        let children: Vec<usize> = adj[x].iter().copied().filter(|&y| parent[y] == x && y != root).collect();
        top[x] = match children.as_slice() {
            [] => b.leaf(here),
            [c] => b.walk(top[*c], bags[*c].clone(), here),
            _ => {
                let below: BTreeSet<usize> = children.iter().flat_map(|&c| bags[c].iter().copied()).collect();
                let joined: BTreeSet<usize> = here.intersection(&below).copied().collect();
                let mut acc: Option<usize> = None;
                for &c in &children {
                    let branch = b.walk(top[c], bags[c].clone(), &joined);
                    acc = Some(match acc {
                        None => branch,
                        Some(left) => b.push(BagKind::Join, vec![left, branch], &joined),
                    });
                }
                let joined_top = acc.expect("at least two children");
                b.walk(joined_top, joined, here)
            }
        };
    }
    let mut nice = NiceTreeDecomposition {
        root: top[root],
        width: d.width(),
        join_bags: 0,
        bags: b.bags,
    };
    nice.join_bags = nice.join_count();
    nice
}

fn merge_equal_neighbours(d: &TreeDecomposition) -> (Vec<BTreeSet<usize>>, Vec<Vec<usize>>) {
    let k = d.bags().len();
    let sets: Vec<BTreeSet<usize>> = d.bags().iter().map(|b| b.iter().copied().collect()).collect();
    let mut uf = crate::unionfind::UnionFind::new(k);
    for &(a, b) in d.tree().arcs() {
        if sets[a] == sets[b] {
            uf.union(a, b);
        }
    }
    let (labels, count) = uf.labels();
    let mut bags = vec![BTreeSet::new(); count];
    for i in 0..k {
        bags[labels[i]] = sets[i].clone();
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); count];
    for &(a, b) in d.tree().arcs() {
        let (la, lb) = (labels[a], labels[b]);
        if la != lb {
            adj[la].insert(lb);
            adj[lb].insert(la);
        }
    }
    (bags, adj.into_iter().map(|s| s.into_iter().collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::widths::{validate_decomposition, PathDecomposition};

    #[test]
    fn path_input_has_no_joins() {
        let g = Multigraph::new(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4), (2, 4)]).unwrap();
        let pd = PathDecomposition::new(vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4]]);
        let nice = to_nice(&pd.to_tree());
        nice.check().unwrap();
        assert_eq!(nice.width, 2);
        assert_eq!(count_join_bags(&nice), 0);
        assert!(nice.bags.len() <= 4 * 5);
        assert!(validate_decomposition(&g, &nice.to_tree_decomposition()).valid);
    }

    #[test]
    fn star_of_bags_needs_joins() {
        let bags = vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3]];
        let tree = Multigraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let td = TreeDecomposition::new(bags, tree).unwrap();
        let nice = to_nice(&td);
        nice.check().unwrap();
        assert_eq!(count_join_bags(&nice), 2);
        let g = crate::graph::star(3);
        assert!(validate_decomposition(&g, &nice.to_tree_decomposition()).valid);
    }

    #[test]
    fn single_bag() {
        let td = PathDecomposition::new(vec![vec![0, 1, 2]]).to_tree();
        let nice = to_nice(&td);
        nice.check().unwrap();
        assert_eq!(nice.bags.len(), 3);
        assert_eq!(nice.bags[0].bag_kind, BagKind::Leaf);
        assert_eq!(count_join_bags(&nice), 0);
    }

    #[test]
    fn equal_neighbours_merge() {
        let td = PathDecomposition::new(vec![vec![0, 1], vec![0, 1], vec![1, 2]]).to_tree();
        let nice = to_nice(&td);
        nice.check().unwrap();
        assert_eq!(nice.bags.len(), 4);
    }

    #[test]
    fn json_uses_lowercase_kinds() {
        let nice = to_nice(&PathDecomposition::new(vec![vec![0]]).to_tree());
        let text = nice.to_json();
        assert!(text.contains("\"leaf\""));
        let back: NiceTreeDecomposition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, nice);
    }
}
