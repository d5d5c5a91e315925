//! Node sets packed into a single unsigned word.

use std::hash::Hash;

use num_traits::PrimInt;

pub trait Word: PrimInt + Hash {}

impl<T: PrimInt + Hash> Word for T {}

pub fn capacity<W: Word>() -> usize {
    W::zero().count_zeros() as usize
}

#[inline]
pub fn bit<W: Word>(i: usize) -> W {
    W::one() << i
}

#[inline]
pub fn has<W: Word>(set: W, i: usize) -> bool {
    !(set & bit::<W>(i)).is_zero()
}

#[inline]
pub fn count<W: Word>(set: W) -> usize {
    set.count_ones() as usize
}

/// The set `{0, ..., n-1}`.
pub fn full<W: Word>(n: usize) -> W {
    if n >= capacity::<W>() {
        !W::zero()
    } else {
        bit::<W>(n) - W::one()
    }
}

/// Members in increasing order.
pub fn ones<W: Word>(mut set: W) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set.is_zero() {
            None
        } else {
            let i = set.trailing_zeros() as usize;
            set = set & (set - W::one());
            Some(i)
        }
    })
}

/// Simple graph with adjacency rows as words.
#[derive(Clone, Debug)]
pub struct BitGraph<W> {
    pub n: usize,
    pub adj: Vec<W>,
}

impl<W: Word> BitGraph<W> {
    /// `adjacency` must describe a simple graph with at most `capacity::<W>()` nodes.
    pub fn new(adjacency: &[Vec<usize>]) -> Self {
        assert!(adjacency.len() <= capacity::<W>());
        let adj = adjacency
            .iter()
            .map(|row| row.iter().fold(W::zero(), |acc, &u| acc | bit::<W>(u)))
            .collect();
        BitGraph {
            n: adjacency.len(),
            adj,
        }
    }

    pub fn neighbours_of(&self, set: W) -> W {
        ones(set).fold(W::zero(), |acc, u| acc | self.adj[u])
    }

    /// Nodes outside `eliminated ∪ {v}` reachable from `v` through `eliminated`:
    /// the neighbourhood of `v` once `eliminated` has been eliminated.
    pub fn eliminated_neighbourhood(&self, eliminated: W, v: usize) -> W {
        let mut comp = bit::<W>(v);
        let mut frontier = comp;
        while !frontier.is_zero() {
            let fresh = self.neighbours_of(frontier) & eliminated & !comp;
            comp = comp | fresh;
            frontier = fresh;
        }
        self.neighbours_of(comp) & !(eliminated | bit::<W>(v))
    }

    /// Members of `placed` with a neighbour outside it.
    pub fn boundary(&self, placed: W) -> W {
        ones(placed).fold(W::zero(), |acc, u| {
            if (self.adj[u] & !placed).is_zero() {
                acc
            } else {
                acc | bit::<W>(u)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_helpers() {
        assert_eq!(capacity::<u64>(), 64);
        assert_eq!(capacity::<u128>(), 128);
        assert_eq!(full::<u64>(64), u64::MAX);
        assert_eq!(full::<u128>(3), 7);
        assert_eq!(ones(0b1011u64).collect::<Vec<_>>(), vec![0, 1, 3]);
        assert!(has(0b100u128, 2));
        assert_eq!(count(0b111u64), 3);
    }

    #[test]
    fn elimination_through_paths() {
        // Path 0 - 1 - 2 - 3; eliminating 1 and 2 makes 0 adjacent to 3.
        let g = BitGraph::<u64>::new(&[vec![1], vec![0, 2], vec![1, 3], vec![2]]);
        assert_eq!(g.eliminated_neighbourhood(0b0110, 0), 0b1000);
        assert_eq!(g.eliminated_neighbourhood(0, 1), 0b0101);
        assert_eq!(g.boundary(0b0011), 0b0010);
    }
}
