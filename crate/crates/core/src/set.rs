//! Fixed-width bit vectors over enumerated group elements.
//!
//! Element indices are bit positions, so sets over groups of order up to
//! [`ElementSet::MAX_ELEMENTS`] fit in four machine words and all the
//! operations the solver cares about (union, intersection, cardinality)
//! are word-parallel. Because the element index is row-major in the
//! `b`-exponent, cosets of `⟨a⟩` occupy contiguous bit runs.

use std::fmt;

const WORDS: usize = 4;

/// A subset of a group of order at most 256, as a bit vector of element
/// indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElementSet {
    words: [u64; WORDS],
}

impl ElementSet {
    /// Largest group order representable.
    pub const MAX_ELEMENTS: usize = WORDS * 64;

    pub const fn empty() -> Self {
        ElementSet { words: [0; WORDS] }
    }

    pub fn singleton(index: usize) -> Self {
        let mut s = Self::empty();
        s.insert(index);
        s
    }

    /// The full set `{0, 1, …, order−1}`.
    pub fn universe(order: usize) -> Self {
        assert!(order <= Self::MAX_ELEMENTS);
        let mut s = Self::empty();
        for w in 0..WORDS {
            let lo = w * 64;
            if order >= lo + 64 {
                s.words[w] = u64::MAX;
            } else if order > lo {
                s.words[w] = (1u64 << (order - lo)) - 1;
            }
        }
        s
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < Self::MAX_ELEMENTS, "element index out of range");
        self.words[index / 64] |= 1u64 << (index % 64);
    }

    pub fn remove(&mut self, index: usize) {
        self.words[index / 64] &= !(1u64 << (index % 64));
    }

    pub fn contains(&self, index: usize) -> bool {
        index < Self::MAX_ELEMENTS && self.words[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words == [0; WORDS]
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for w in 0..WORDS {
            self.words[w] |= other.words[w];
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut s = *self;
        s.union_with(other);
        s
    }

    pub fn intersect(&self, other: &ElementSet) -> ElementSet {
        let mut s = *self;
        for w in 0..WORDS {
            s.words[w] &= other.words[w];
        }
        s
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut s = *self;
        for w in 0..WORDS {
            s.words[w] &= !other.words[w];
        }
        s
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Number of elements of `other` not already in `self`.
    pub fn count_new(&self, other: &ElementSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (b & !a).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> Indices {
        Indices {
            set: *self,
            word: 0,
        }
    }

    /// Smallest element index, if any.
    pub fn min_index(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Keep only the `n` smallest indices.
    pub fn truncated(&self, n: usize) -> ElementSet {
        let mut s = Self::empty();
        for idx in self.iter().take(n) {
            s.insert(idx);
        }
        s
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = Self::empty();
        for idx in iter {
            s.insert(idx);
        }
        s
    }
}

pub struct Indices {
    set: ElementSet,
    word: usize,
}

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.set.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.set.words[self.word] &= w - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let mut s = ElementSet::empty();
        assert!(s.is_empty());
        s.insert(0);
        s.insert(63);
        s.insert(64);
        s.insert(255);
        assert_eq!(s.len(), 4);
        assert!(s.contains(64));
        assert!(!s.contains(65));
        s.remove(64);
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn iteration_is_sorted() {
        let s: ElementSet = [200, 3, 64, 3, 17].into_iter().collect();
        let got: Vec<usize> = s.iter().collect();
        assert_eq!(got, vec![3, 17, 64, 200]);
    }

    #[test]
    fn universe_and_subset() {
        let u = ElementSet::universe(70);
        assert_eq!(u.len(), 70);
        let s: ElementSet = (0..70).step_by(7).collect();
        assert!(s.is_subset_of(&u));
        assert!(!u.is_subset_of(&s));
    }

    #[test]
    fn truncated_keeps_smallest() {
        let s: ElementSet = [9, 1, 5, 130].into_iter().collect();
        assert_eq!(
            s.truncated(2).iter().collect::<Vec<_>>(),
            vec![1, 5]
        );
    }

    #[test]
    fn count_new_matches_union_growth() {
        let a: ElementSet = [1, 2, 3].into_iter().collect();
        let b: ElementSet = [3, 4, 100].into_iter().collect();
        assert_eq!(a.count_new(&b), 2);
        assert_eq!(a.union(&b).len(), a.len() + a.count_new(&b));
    }
}
