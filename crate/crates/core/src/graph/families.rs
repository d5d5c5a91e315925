use super::Multigraph;

/// `rows × cols` grid; node `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Multigraph {
    let mut g = Multigraph::empty(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                g.arcs.push((v, v + 1));
            }
            if r + 1 < rows {
                g.arcs.push((v, v + cols));
            }
        }
    }
    g
}

pub fn complete(n: usize) -> Multigraph {
    let mut g = Multigraph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            g.arcs.push((a, b));
        }
    }
    g
}

/// Complete binary tree of height `h` with `2^(h+1) - 1` nodes in heap order.
pub fn complete_binary_tree(h: u32) -> Multigraph {
    let n = (1usize << (h + 1)) - 1;
    let mut g = Multigraph::empty(n);
    for v in 1..n {
        g.arcs.push(((v - 1) / 2, v));
    }
    g
}

pub fn path(n: usize) -> Multigraph {
    let mut g = Multigraph::empty(n);
    for v in 1..n {
        g.arcs.push((v - 1, v));
    }
    g
}

pub fn cycle(n: usize) -> Multigraph {
    let mut g = path(n);
    if n >= 3 {
        g.arcs.push((0, n - 1));
    }
    g
}

/// Centre `0` joined to `leaves` further nodes.
pub fn star(leaves: usize) -> Multigraph {
    let mut g = Multigraph::empty(leaves + 1);
    for v in 1..=leaves {
        g.arcs.push((0, v));
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(grid(5, 5).n_arcs(), 40);
        assert_eq!(complete(7).n_arcs(), 21);
        assert_eq!(complete_binary_tree(0).n_nodes(), 1);
        assert_eq!(complete_binary_tree(6).n_nodes(), 127);
        assert_eq!(complete_binary_tree(3).betti_number(), 0);
        assert_eq!(cycle(5).betti_number(), 1);
        assert_eq!(star(3).degrees(), vec![3, 1, 1, 1]);
    }
}
