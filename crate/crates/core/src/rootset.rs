//! Fixed-width sets of positive roots.
//!
//! A [`RootSet`] is a 128-bit mask over 0-based root positions, which covers
//! every positive root system up to `E8` (120 roots).

use alloc::vec::Vec;
use core::fmt;

/// Largest number of positive roots a [`RootSet`] can address.
pub const MAX_ROOTS: usize = 128;

/// A set of positive roots encoded as a bitmask over 0-based root positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RootSet(pub u128);

impl RootSet {
    /// The empty set.
    pub const EMPTY: RootSet = RootSet(0);

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> RootSet {
        if n >= 128 {
            RootSet(u128::MAX)
        } else {
            RootSet((1u128 << n) - 1)
        }
    }

    /// The singleton `{i}`.
    #[inline]
    pub fn single(i: usize) -> RootSet {
        RootSet(1u128 << i)
    }

    /// Builds a set from 0-based positions.
    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> RootSet {
        let mut s = RootSet::EMPTY;
        for i in it {
            s.insert(i);
        }
        s
    }

    /// Builds a set from 1-based root labels.
    pub fn from_labels<I: IntoIterator<Item = usize>>(it: I) -> RootSet {
        RootSet::from_indices(it.into_iter().map(|i| i - 1))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    #[inline]
    pub fn with(self, i: usize) -> RootSet {
        RootSet(self.0 | (1u128 << i))
    }

    #[inline]
    pub fn without(self, i: usize) -> RootSet {
        RootSet(self.0 & !(1u128 << i))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, o: RootSet) -> RootSet {
        RootSet(self.0 | o.0)
    }

    #[inline]
    pub fn inter(self, o: RootSet) -> RootSet {
        RootSet(self.0 & o.0)
    }

    #[inline]
    pub fn minus(self, o: RootSet) -> RootSet {
        RootSet(self.0 & !o.0)
    }

    #[inline]
    pub fn is_subset(self, o: RootSet) -> bool {
        self.0 & !o.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, o: RootSet) -> bool {
        self.0 & o.0 == 0
    }

    /// Smallest position in the set.
    #[inline]
    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Largest position in the set.
    #[inline]
    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(127 - self.0.leading_zeros() as usize)
        }
    }

    /// Iterates positions in increasing order.
    #[inline]
    pub fn iter(self) -> RootSetIter {
        RootSetIter(self.0)
    }

    /// Positions in increasing order.
    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

/// Iterator over the positions of a [`RootSet`] in increasing order.
pub struct RootSetIter(u128);

impl Iterator for RootSetIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for RootSetIter {}

impl FromIterator<usize> for RootSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        RootSet::from_indices(it)
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|i| i + 1)).finish()
    }
}

impl fmt::Display for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}
