use std::fmt;

use serde::{Deserialize, Serialize};

/// A permutation of the four vertex labels of a tetrahedron.
///
/// `image()[i]` is where vertex `i` goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VertexPerm([u8; 4]);

impl VertexPerm {
    pub const IDENTITY: VertexPerm = VertexPerm([0, 1, 2, 3]);

    /// Builds a permutation, rejecting anything that is not a bijection on `{0,1,2,3}`.
    pub fn new(image: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &v in &image {
            if v > 3 || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        Some(VertexPerm(image))
    }

    /// All 24 permutations in lexicographic order.
    pub fn all() -> impl Iterator<Item = VertexPerm> {
        (0..24).map(Self::from_index)
    }

    /// The `index`-th permutation in lexicographic order, `index < 24`.
    pub fn from_index(index: usize) -> VertexPerm {
        assert!(index < 24);
        let mut pool = vec![0u8, 1, 2, 3];
        let mut rest = index;
        let mut image = [0u8; 4];
        for (slot, fact) in [6usize, 2, 1, 1].iter().enumerate() {
            let pick = rest / fact;
            rest %= fact;
            image[slot] = pool.remove(pick);
        }
        VertexPerm(image)
    }

    /// Position of this permutation in lexicographic order.
    pub fn index(self) -> usize {
        let mut idx = 0;
        for i in 0..4 {
            let smaller_later = (i + 1..4).filter(|&j| self.0[j] < self.0[i]).count();
            idx += smaller_later * [6, 2, 1, 1][i];
        }
        idx
    }

    #[inline]
    pub fn image(self) -> [u8; 4] {
        self.0
    }

    #[inline]
    pub fn apply(self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn inverse(self) -> VertexPerm {
        let mut inv = [0u8; 4];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        VertexPerm(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: VertexPerm) -> VertexPerm {
        let mut out = [0u8; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0[other.0[i] as usize];
        }
        VertexPerm(out)
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(self) -> i8 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl Default for VertexPerm {
    fn default() -> Self {
        VertexPerm::IDENTITY
    }
}

impl fmt::Display for VertexPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.0 {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a permutation of 0123")]
pub struct BadPerm(pub String);

impl std::str::FromStr for VertexPerm {
    type Err = BadPerm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 {
            return Err(BadPerm(s.to_string()));
        }
        let mut image = [0u8; 4];
        for (slot, &b) in image.iter_mut().zip(bytes) {
            if !(b'0'..=b'3').contains(&b) {
                return Err(BadPerm(s.to_string()));
            }
            *slot = b - b'0';
        }
        VertexPerm::new(image).ok_or_else(|| BadPerm(s.to_string()))
    }
}

impl TryFrom<String> for VertexPerm {
    type Error = BadPerm;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<VertexPerm> for String {
    fn from(p: VertexPerm) -> String {
        p.to_string()
    }
}
