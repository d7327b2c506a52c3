use std::ops::Index;

use serde::Serialize;

/// A permutation of {0,1,2,3}, stored as its image array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Perm4(pub [usize; 4]);

/// All 24 permutations in lexicographic order of their image arrays.
const ORDERED: [[usize; 4]; 24] = [
    [0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1],
    [1, 0, 2, 3], [1, 0, 3, 2], [1, 2, 0, 3], [1, 2, 3, 0], [1, 3, 0, 2], [1, 3, 2, 0],
    [2, 0, 1, 3], [2, 0, 3, 1], [2, 1, 0, 3], [2, 1, 3, 0], [2, 3, 0, 1], [2, 3, 1, 0],
    [3, 0, 1, 2], [3, 0, 2, 1], [3, 1, 0, 2], [3, 1, 2, 0], [3, 2, 0, 1], [3, 2, 1, 0],
];

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn from_index(i: usize) -> Perm4 {
        Perm4(ORDERED[i])
    }

    pub fn index(self) -> usize {
        ORDERED.iter().position(|p| *p == self.0).expect("valid permutation")
    }

    pub fn is_valid(self) -> bool {
        let mut seen = [false; 4];
        for &v in &self.0 {
            if v > 3 || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn inverse(self) -> Perm4 {
        let mut out = [0; 4];
        for (i, &v) in self.0.iter().enumerate() {
            out[v] = i;
        }
        Perm4(out)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm4) -> Perm4 {
        Perm4([self[other[0]], self[other[1]], self[other[2]], self[other[3]]])
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(self) -> i32 {
        let mut inv = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 { 1 } else { -1 }
    }
}

impl Index<usize> for Perm4 {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}
