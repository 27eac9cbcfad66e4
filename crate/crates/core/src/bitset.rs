//! Index sets over the objects or attributes of one context.
//!
//! Both set kinds are fixed-universe bitsets. The universe is the number of
//! objects (resp. attributes) of the owning context, so two sets can only be
//! combined when their universes agree.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

/// A fixed-universe bitset, the shared representation behind
/// [`ObjectSet`] and [`AttributeSet`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    universe: usize,
}

impl BitSet {
    pub fn empty(universe: usize) -> Self {
        BitSet { words: vec![0; universe.div_ceil(WORD)], universe }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    fn trim(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / WORD] & (1 << (i % WORD)) != 0
    }

    /// Panics if `i` is outside the universe.
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "index {i} outside universe {}", self.universe);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.universe {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn complement(&self) -> BitSet {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    /// Keeps only the indices strictly below `bound`.
    pub fn truncate_below(&mut self, bound: usize) {
        for (k, w) in self.words.iter_mut().enumerate() {
            let lo = k * WORD;
            if lo >= bound {
                *w = 0;
            } else if bound < lo + WORD {
                *w &= (1u64 << (bound - lo)) - 1;
            }
        }
    }

    /// Smallest index in the set, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, word: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    /// Lectic comparison: the set containing the smallest index in the
    /// symmetric difference is the larger one.
    pub fn lectic_cmp(&self, other: &BitSet) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = 1u64 << diff.trailing_zeros();
                return if b & bit != 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * WORD + bit);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

macro_rules! index_set {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, Hash)]
        pub struct $name(BitSet);

        impl $name {
            pub fn empty(universe: usize) -> Self {
                $name(BitSet::empty(universe))
            }

            pub fn full(universe: usize) -> Self {
                $name(BitSet::full(universe))
            }

            /// Builds a set from indices; `None` if any index is out of range.
            pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Option<Self> {
                let mut set = BitSet::empty(universe);
                for i in indices {
                    if i >= universe {
                        return None;
                    }
                    set.insert(i);
                }
                Some($name(set))
            }

            pub fn singleton(universe: usize, i: usize) -> Option<Self> {
                Self::from_indices(universe, [i])
            }

            pub fn bits(&self) -> &BitSet {
                &self.0
            }

            pub fn universe(&self) -> usize {
                self.0.universe()
            }

            pub fn contains(&self, i: usize) -> bool {
                self.0.contains(i)
            }

            pub fn insert(&mut self, i: usize) {
                self.0.insert(i)
            }

            pub fn remove(&mut self, i: usize) {
                self.0.remove(i)
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn is_full(&self) -> bool {
                self.0.is_full()
            }

            pub fn is_subset(&self, other: &Self) -> bool {
                self.0.is_subset(&other.0)
            }

            pub fn is_disjoint(&self, other: &Self) -> bool {
                self.0.is_disjoint(&other.0)
            }

            pub fn union(&self, other: &Self) -> Self {
                let mut out = self.clone();
                out.0.union_with(&other.0);
                out
            }

            pub fn intersection(&self, other: &Self) -> Self {
                let mut out = self.clone();
                out.0.intersect_with(&other.0);
                out
            }

            pub fn difference(&self, other: &Self) -> Self {
                let mut out = self.clone();
                out.0.difference_with(&other.0);
                out
            }

            pub fn complement(&self) -> Self {
                $name(self.0.complement())
            }

            pub fn iter(&self) -> Iter<'_> {
                self.0.iter()
            }

            pub fn first(&self) -> Option<usize> {
                self.0.first()
            }

            pub fn to_vec(&self) -> Vec<usize> {
                self.0.iter().collect()
            }

            pub fn lectic_cmp(&self, other: &Self) -> Ordering {
                self.0.lectic_cmp(&other.0)
            }

            pub(crate) fn from_bits(bits: BitSet) -> Self {
                $name(bits)
            }

            pub(crate) fn bits_mut(&mut self) -> &mut BitSet {
                &mut self.0
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", stringify!($name))?;
                self.0.fmt(f)
            }
        }

        impl<'a> IntoIterator for &'a $name {
            type Item = usize;
            type IntoIter = Iter<'a>;

            fn into_iter(self) -> Iter<'a> {
                self.iter()
            }
        }
    };
}

index_set!(
    /// A set of object (row) indices, `A ⊆ G`.
    ObjectSet
);
index_set!(
    /// A set of attribute (column) indices, `B ⊆ M`.
    AttributeSet
);
