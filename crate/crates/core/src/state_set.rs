//! Bitset-backed subsets of the state space.

use std::fmt;

const WORD_BITS: usize = 64;

/// A subset of `0..n` with constant-time membership and a cached cardinality.
///
/// Two sets are equal when they have the same universe size and the same members.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    universe: usize,
    blocks: Vec<u64>,
    len: usize,
}

impl StateSet {
    /// The empty subset of `0..universe`.
    pub fn empty(universe: usize) -> Self {
        StateSet {
            universe,
            blocks: vec![0; universe.div_ceil(WORD_BITS)],
            len: 0,
        }
    }

    /// The full set `0..universe`.
    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for (i, block) in set.blocks.iter_mut().enumerate() {
            let remaining = universe - i * WORD_BITS;
            *block = if remaining >= WORD_BITS {
                u64::MAX
            } else {
                (1u64 << remaining) - 1
            };
        }
        set.len = universe;
        set
    }

    pub fn singleton(universe: usize, state: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(state);
        set
    }

    /// Builds a set from an iterator of states; duplicates are ignored.
    ///
    /// Panics if a state lies outside `0..universe`.
    pub fn from_states<I: IntoIterator<Item = usize>>(universe: usize, states: I) -> Self {
        let mut set = Self::empty(universe);
        for q in states {
            set.insert(q);
        }
        set
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Number of members. Cached, so this is O(1).
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.len == self.universe
    }

    #[inline]
    pub fn contains(&self, state: usize) -> bool {
        state < self.universe && self.blocks[state / WORD_BITS] >> (state % WORD_BITS) & 1 == 1
    }

    /// Adds `state`; returns `true` if it was not already present.
    #[inline]
    pub fn insert(&mut self, state: usize) -> bool {
        assert!(
            state < self.universe,
            "state {state} outside universe of size {}",
            self.universe
        );
        let block = &mut self.blocks[state / WORD_BITS];
        let mask = 1u64 << (state % WORD_BITS);
        if *block & mask == 0 {
            *block |= mask;
            self.len += 1;
            true
        } else {
            false
        }
    }

    /// Removes `state`; returns `true` if it was present.
    pub fn remove(&mut self, state: usize) -> bool {
        if state >= self.universe {
            return false;
        }
        let block = &mut self.blocks[state / WORD_BITS];
        let mask = 1u64 << (state % WORD_BITS);
        if *block & mask != 0 {
            *block &= !mask;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    pub fn clear(&mut self) {
        self.blocks.iter_mut().for_each(|b| *b = 0);
        self.len = 0;
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            blocks: &self.blocks,
            index: 0,
            current: self.blocks.first().copied().unwrap_or(0),
        }
    }

    /// The smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.universe == other.universe
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a StateSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`StateSet`].
pub struct Iter<'a> {
    blocks: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            if self.index >= self.blocks.len() {
                return None;
            }
            self.current = self.blocks[self.index];
        }
    }
}
