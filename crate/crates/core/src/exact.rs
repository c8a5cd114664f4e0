//! Exact shortest reset words by breadth-first search in the power automaton.
//!
//! Subsets are encoded as `u32` bitmasks, so the search is only offered for
//! small automata.

use std::time::Instant;

use crate::automaton::{Automaton, Word};
use crate::error::SearchError;
use crate::result::{Algorithm, LevelStats, SearchResult};

/// Default cap on the number of states for [`exact_shortest`].
pub const DEFAULT_EXACT_LIMIT: usize = 20;

const UNVISITED: u32 = u32::MAX;

pub fn exact_shortest(automaton: &Automaton) -> Result<SearchResult, SearchError> {
    exact_shortest_with_limit(automaton, DEFAULT_EXACT_LIMIT)
}

/// Forward BFS from the full set under letter images until a singleton
/// appears. `limit` may not exceed 26.
pub fn exact_shortest_with_limit(
    automaton: &Automaton,
    limit: usize,
) -> Result<SearchResult, SearchError> {
    let started = Instant::now();
    let (n, k) = (automaton.states(), automaton.letters());
    let limit = limit.min(26);
    if n > limit {
        return Err(SearchError::InstanceTooLarge { n, limit });
    }

    let full = (1u32 << n) - 1;
    let mut parent = vec![UNVISITED; 1usize << n];
    let mut via = vec![0u8; 1usize << n];
    assert!(k <= 256, "exact search stores letters in a byte");
    parent[full as usize] = full;

    let mut layer = vec![full];
    let mut frontier_sizes = vec![1];
    let mut levels = Vec::new();
    let mut goal = (full.count_ones() == 1).then_some(full);
    while goal.is_none() && !layer.is_empty() {
        let mut next = Vec::new();
        let mut stats = LevelStats {
            level: levels.len() + 1,
            expanded: layer.len(),
            ..LevelStats::default()
        };
        'layer: for &set in &layer {
            for a in 0..k {
                let mut image = 0u32;
                let mut rest = set;
                while rest != 0 {
                    let q = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    image |= 1 << automaton.next(q, a);
                    stats.steps += 1;
                }
                stats.generated += 1;
                if parent[image as usize] == UNVISITED {
                    parent[image as usize] = set;
                    via[image as usize] = a as u8;
                    next.push(image);
                    if image.count_ones() == 1 {
                        goal = Some(image);
                        break 'layer;
                    }
                }
            }
        }
        stats.distinct = next.len();
        stats.kept = next.len();
        levels.push(stats);
        if goal.is_none() {
            frontier_sizes.push(next.len());
        }
        layer = next;
    }

    let Some(goal) = goal else {
        return Err(SearchError::NotSynchronizing);
    };
    let mut letters = Vec::new();
    let mut current = goal;
    while current != full {
        letters.push(via[current as usize] as usize);
        current = parent[current as usize];
    }
    letters.reverse();
    Ok(SearchResult {
        length: letters.len(),
        word: Word::new(letters),
        algorithm: Algorithm::Exact,
        frontier_sizes,
        levels,
        elapsed: started.elapsed(),
        params: None,
    })
}
