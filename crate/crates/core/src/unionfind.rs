//! Disjoint-set forests used for simplex identification.

/// Union-find over `0..len` with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if the two sets were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    /// Dense class labels `0..k`, numbered by first appearance.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut root_label = vec![usize::MAX; n];
        let mut labels = Vec::with_capacity(n);
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            labels.push(root_label[r]);
        }
        (labels, next)
    }
}

/// Union-find where every element carries a parity relative to its root.
///
/// Used for oriented identifications: `union(a, b, odd)` records that `a`
/// and `b` are identified with a flip when `odd` is set. A conflicting
/// relation inside one class is remembered as a contradiction.
#[derive(Clone, Debug)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    contradiction: bool,
}

impl ParityUnionFind {
    pub fn new(len: usize) -> Self {
        ParityUnionFind {
            parent: (0..len).collect(),
            parity: vec![false; len],
            contradiction: false,
        }
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // Compress: walk back from the element nearest the root.
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { false } else { self.parity[x] })
    }

    pub fn union(&mut self, a: usize, b: usize, odd: bool) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != odd {
                self.contradiction = true;
            }
            return;
        }
        self.parent[rb] = ra;
        self.parity[rb] = pa ^ pb ^ odd;
    }

    pub fn has_contradiction(&self) -> bool {
        self.contradiction
    }

    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut root_label = vec![usize::MAX; n];
        let mut labels = Vec::with_capacity(n);
        let mut next = 0;
        for x in 0..n {
            let (r, _) = self.find(x);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            labels.push(root_label[r]);
        }
        (labels, next)
    }
}
