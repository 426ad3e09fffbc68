use std::fmt;

use serde::{Deserialize, Serialize};

/// A subset of the simple roots, stored as a bitmask over `0..rank`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", from = "Vec<usize>")]
pub struct SimpleSubset(u32);

impl SimpleSubset {
    pub const EMPTY: SimpleSubset = SimpleSubset(0);

    pub fn full(rank: usize) -> Self {
        debug_assert!(rank <= 32);
        if rank == 32 {
            SimpleSubset(u32::MAX)
        } else {
            SimpleSubset((1u32 << rank) - 1)
        }
    }

    pub fn from_bits(bits: u32) -> Self {
        SimpleSubset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        SimpleSubset(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: SimpleSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: SimpleSubset) -> Self {
        SimpleSubset(self.0 & other.0)
    }

    pub fn union(self, other: SimpleSubset) -> Self {
        SimpleSubset(self.0 | other.0)
    }

    /// True if every index is below `rank`.
    pub fn fits(self, rank: usize) -> bool {
        self.is_subset(Self::full(rank))
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = SimpleSubset> {
        let mask = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask { None } else { Some((cur | !mask).wrapping_add(1) & mask) };
            Some(SimpleSubset(cur))
        })
    }

    /// All subsets of `0..rank`.
    pub fn all(rank: usize) -> impl Iterator<Item = SimpleSubset> {
        Self::full(rank).subsets()
    }

    /// Image under a permutation of the index set.
    pub fn map(self, perm: &[usize]) -> Self {
        self.iter().map(|i| perm[i]).collect()
    }
}

impl FromIterator<usize> for SimpleSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        SimpleSubset(iter.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }
}

impl From<Vec<usize>> for SimpleSubset {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl From<SimpleSubset> for Vec<usize> {
    fn from(s: SimpleSubset) -> Self {
        s.iter().collect()
    }
}

impl fmt::Debug for SimpleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SimpleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
