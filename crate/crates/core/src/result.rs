use std::fmt;
use std::time::Duration;

use crate::automaton::Word;
use crate::ibfs::SearchParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Eppstein,
    CutoffIbfs,
    Exact,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Eppstein => "eppstein",
            Algorithm::CutoffIbfs => "cutoff-ibfs",
            Algorithm::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Work done by one level of a breadth-first search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LevelStats {
    pub level: usize,
    /// Sets expanded at this level.
    pub expanded: usize,
    /// Nonempty preimages (or images) produced.
    pub generated: usize,
    /// Distinct sets after deduplication.
    pub distinct: usize,
    /// Sets kept for the next level.
    pub kept: usize,
    /// Elementary set operations: state visits while computing preimages
    /// plus trie edges walked on insertion.
    pub steps: u64,
}

/// A reset word together with how it was found.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub length: usize,
    pub word: Word,
    pub algorithm: Algorithm,
    /// Number of sets kept per level; entry 0 is the start frontier. Levels
    /// that reached the goal are not included. Eppstein keeps one set per
    /// level and records its cardinality in [`LevelStats::kept`].
    pub frontier_sizes: Vec<usize>,
    pub levels: Vec<LevelStats>,
    pub elapsed: Duration,
    pub params: Option<SearchParams>,
}

impl SearchResult {
    /// Largest frontier kept at any level after the start level.
    pub fn frontier_peak(&self) -> usize {
        self.frontier_sizes
            .iter()
            .skip(1)
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Equality of everything except the wall time.
    pub fn same_outcome(&self, other: &SearchResult) -> bool {
        self.length == other.length
            && self.word == other.word
            && self.algorithm == other.algorithm
            && self.frontier_sizes == other.frontier_sizes
            && self.levels == other.levels
            && self.params == other.params
    }
}
