//! Eppstein's greedy pair-merging algorithm.

use std::collections::VecDeque;
use std::time::Instant;

use crate::automaton::{Automaton, Word};
use crate::error::SearchError;
use crate::result::{Algorithm, LevelStats, SearchResult};
use crate::state_set::StateSet;

const UNREACHED: u32 = u32::MAX;

/// Shortest merging words for every pair of states.
///
/// Filled by a breadth-first search over the pair automaton that starts at the
/// diagonal and follows transitions backwards. For a pair at distance `d >= 1`
/// the stored letter leads to a pair at distance `d - 1`.
pub struct PairTable {
    n: usize,
    /// Indexed by `p * n + q` with `p <= q`.
    dist: Vec<u32>,
    letter: Vec<u32>,
}

impl PairTable {
    pub fn new(automaton: &Automaton) -> Self {
        let n = automaton.states();
        let mut dist = vec![UNREACHED; n * n];
        let mut letter = vec![UNREACHED; n * n];
        let mut queue = VecDeque::with_capacity(n * (n + 1) / 2);
        for p in 0..n {
            dist[p * n + p] = 0;
            queue.push_back((p, p));
        }
        while let Some((p, q)) = queue.pop_front() {
            let next = dist[p * n + q] + 1;
            for a in 0..automaton.letters() {
                let from_p = automaton.sources(p, a);
                let from_q = automaton.sources(q, a);
                for &x in from_p {
                    for &y in from_q {
                        if x == y {
                            continue;
                        }
                        let (lo, hi) = (x.min(y) as usize, x.max(y) as usize);
                        let slot = lo * n + hi;
                        if dist[slot] == UNREACHED {
                            dist[slot] = next;
                            letter[slot] = a as u32;
                            queue.push_back((lo, hi));
                        }
                    }
                }
            }
        }
        PairTable { n, dist, letter }
    }

    fn slot(&self, p: usize, q: usize) -> usize {
        p.min(q) * self.n + p.max(q)
    }

    /// Length of a shortest word merging `p` and `q`, if one exists.
    pub fn dist(&self, p: usize, q: usize) -> Option<usize> {
        match self.dist[self.slot(p, q)] {
            UNREACHED => None,
            d => Some(d as usize),
        }
    }

    /// First letter of a shortest merging word; `None` on the diagonal or for
    /// pairs that cannot be merged.
    pub fn first_letter(&self, p: usize, q: usize) -> Option<usize> {
        match self.letter[self.slot(p, q)] {
            UNREACHED => None,
            a => Some(a as usize),
        }
    }

    /// Whether every pair can be merged, which holds exactly when the
    /// automaton is synchronizing.
    pub fn all_mergeable(&self) -> bool {
        (0..self.n).all(|p| (p + 1..self.n).all(|q| self.dist[p * self.n + q] != UNREACHED))
    }

    /// A shortest merging word for `p` and `q`.
    pub fn merging_word(&self, automaton: &Automaton, p: usize, q: usize) -> Option<Word> {
        self.dist(p, q)?;
        let (mut p, mut q) = (p, q);
        let mut word = Word::empty();
        while p != q {
            let a = self.first_letter(p, q)?;
            word.push(a);
            p = automaton.next(p, a);
            q = automaton.next(q, a);
        }
        Some(word)
    }
}

/// Greedy Eppstein: repeatedly merge the pair of current states with the
/// shortest merging word. Ties go to the lexicographically smallest
/// `(min, max)` pair.
pub fn eppstein_greedy(automaton: &Automaton) -> Result<SearchResult, SearchError> {
    let started = Instant::now();
    let n = automaton.states();
    let table = PairTable::new(automaton);
    if !table.all_mergeable() {
        return Err(SearchError::NotSynchronizing);
    }

    let mut current = StateSet::full(n);
    let mut word = Word::empty();
    let mut sizes = vec![1];
    let mut levels = Vec::new();
    while current.len() > 1 {
        let members: Vec<usize> = current.iter().collect();
        let mut best: Option<(u32, usize, usize)> = None;
        let mut steps = 0u64;
        for (i, &p) in members.iter().enumerate() {
            for &q in &members[i + 1..] {
                steps += 1;
                let d = table.dist[p * n + q];
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, p, q));
                }
            }
        }
        let (_, p, q) = best.expect("at least two states remain");
        let merge = table
            .merging_word(automaton, p, q)
            .expect("all pairs are mergeable");
        for &a in merge.letters() {
            current = automaton.image(&current, a);
            steps += current.len() as u64;
        }
        word.extend_from(&merge);
        levels.push(LevelStats {
            level: levels.len() + 1,
            expanded: members.len(),
            generated: merge.len(),
            distinct: 1,
            // Cardinality of the current set, not a set count.
            kept: current.len(),
            steps,
        });
        sizes.push(1);
    }

    Ok(SearchResult {
        length: word.len(),
        word,
        algorithm: Algorithm::Eppstein,
        frontier_sizes: sizes,
        levels,
        elapsed: started.elapsed(),
        params: None,
    })
}
