//! Dense bitsets over the element indices of one fixed group.

use std::cmp::Ordering;
use std::fmt;

/// A set of element indices drawn from a fixed universe `0..universe`.
///
/// Backed by a `u64` bitset with a cached population count, so membership,
/// insertion, and the set algebra used by closure computations are cheap.
/// Binary operations require both operands to share the same universe.
///
/// Equality and hashing look at the stored words (the universe is fixed per
/// group, so this is exactly set equality), which makes `ElementSet` directly
/// usable as a memo key. Ordering is by size first, then lexicographically by
/// words — the canonical order used for subgroup listings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Box<[u64]>,
    universe: u32,
    size: u32,
}

impl ElementSet {
    /// The empty set over `0..universe`.
    pub fn empty(universe: usize) -> Self {
        let words = vec![0u64; universe.div_ceil(64)].into_boxed_slice();
        ElementSet {
            words,
            universe: universe as u32,
            size: 0,
        }
    }

    /// The full set `{0, 1, …, universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for x in 0..universe {
            s.insert(x);
        }
        s
    }

    /// Builds a set from explicit indices (duplicates are fine).
    ///
    /// Panics if any index is out of range.
    pub fn from_indices(universe: usize, indices: &[usize]) -> Self {
        let mut s = Self::empty(universe);
        for &x in indices {
            s.insert(x);
        }
        s
    }

    /// Size of the universe this set draws from.
    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    /// Number of elements in the set.
    pub fn len(&self) -> usize {
        self.size as usize
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        assert!(x < self.universe as usize, "index {x} outside universe");
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    /// Inserts `x`; returns `true` if it was not already present.
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.universe as usize, "index {x} outside universe");
        let w = &mut self.words[x / 64];
        let bit = 1u64 << (x % 64);
        if *w & bit == 0 {
            *w |= bit;
            self.size += 1;
            true
        } else {
            false
        }
    }

    /// Removes `x`; returns `true` if it was present.
    pub fn remove(&mut self, x: usize) -> bool {
        assert!(x < self.universe as usize, "index {x} outside universe");
        let w = &mut self.words[x / 64];
        let bit = 1u64 << (x % 64);
        if *w & bit != 0 {
            *w &= !bit;
            self.size -= 1;
            true
        } else {
            false
        }
    }

    fn assert_same_universe(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "sets over different universes"
        );
    }

    pub fn union(&self, other: &Self) -> Self {
        self.assert_same_universe(other);
        let words: Box<[u64]> = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a | b)
            .collect();
        let size = words.iter().map(|w| w.count_ones()).sum();
        ElementSet {
            words,
            universe: self.universe,
            size,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.assert_same_universe(other);
        let words: Box<[u64]> = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a & b)
            .collect();
        let size = words.iter().map(|w| w.count_ones()).sum();
        ElementSet {
            words,
            universe: self.universe,
            size,
        }
    }

    /// `true` when every element of `self` lies in `other`.
    pub fn is_subset(&self, other: &Self) -> bool {
        self.assert_same_universe(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Iterates the member indices in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_ix: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// The member indices, in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The raw bitset words (low element indices in low bits of `words[0]`).
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size
            .cmp(&other.size)
            .then_with(|| self.words.cmp(&other.words))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over member indices; see [`ElementSet::iter`].
pub struct Iter<'a> {
    words: &'a [u64],
    word_ix: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_ix += 1;
            self.current = *self.words.get(self.word_ix)?;
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_ix * 64 + bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_contains() {
        let mut s = ElementSet::empty(100);
        assert!(s.is_empty());
        assert!(s.insert(3));
        assert!(!s.insert(3));
        assert!(s.insert(77));
        assert_eq!(s.len(), 2);
        assert!(s.contains(3) && s.contains(77) && !s.contains(4));
        assert!(s.remove(3));
        assert!(!s.remove(3));
        assert_eq!(s.indices(), vec![77]);
    }

    #[test]
    fn set_algebra() {
        let a = ElementSet::from_indices(10, &[1, 3, 5]);
        let b = ElementSet::from_indices(10, &[3, 5, 7]);
        assert_eq!(a.union(&b).indices(), vec![1, 3, 5, 7]);
        assert_eq!(a.intersection(&b).indices(), vec![3, 5]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert!(a.is_subset(&ElementSet::full(10)));
        assert!(ElementSet::empty(10).is_subset(&a));
    }

    #[test]
    fn iter_crosses_word_boundaries() {
        let s = ElementSet::from_indices(200, &[0, 63, 64, 127, 128, 199]);
        assert_eq!(s.indices(), vec![0, 63, 64, 127, 128, 199]);
        assert_eq!(s.len(), 6);
    }

    #[test]
    fn ordering_is_size_then_words() {
        let small = ElementSet::from_indices(10, &[9]);
        let big = ElementSet::from_indices(10, &[0, 1]);
        assert!(small < big, "smaller set sorts first regardless of content");
        // Equal sizes tie-break on the numeric bit pattern:
        // {1,2} = 0b0110 = 6 sorts before {0,3} = 0b1001 = 9.
        let a = ElementSet::from_indices(10, &[1, 2]);
        let b = ElementSet::from_indices(10, &[0, 3]);
        assert!(a < b);
    }

    #[test]
    fn debug_format() {
        let s = ElementSet::from_indices(10, &[4, 0, 2]);
        assert_eq!(format!("{s:?}"), "{0,2,4}");
    }
}
