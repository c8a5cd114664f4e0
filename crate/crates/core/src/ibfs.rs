//! Inverse breadth-first search with a frontier cutoff (CutOff-IBFS).
//!
//! The search grows sets from singletons by taking preimages under every
//! letter. A set reached after `l` levels maps onto its start singleton under
//! a word of length `l`, so the first level that produces the whole state set
//! yields a reset word of that length. After each level only the `maxsize`
//! largest distinct sets survive.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::automaton::{Automaton, StartMode, Word};
use crate::eppstein::eppstein_greedy;
use crate::error::SearchError;
use crate::result::{Algorithm, LevelStats, SearchResult};
use crate::set_trie::SetTrie;
use crate::state_set::StateSet;

/// Cap on the number of sets kept per level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaxSize {
    Bounded(usize),
    Unbounded,
}

impl MaxSize {
    /// `max(1, ceil(log2 n))`.
    pub fn log2(n: usize) -> MaxSize {
        let bits = if n <= 1 {
            0
        } else {
            (usize::BITS - (n - 1).leading_zeros()) as usize
        };
        MaxSize::Bounded(bits.max(1))
    }

    pub fn limit(self) -> usize {
        match self {
            MaxSize::Bounded(c) => c,
            MaxSize::Unbounded => usize::MAX,
        }
    }
}

impl fmt::Display for MaxSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxSize::Bounded(c) => write!(f, "{c}"),
            MaxSize::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl FromStr for MaxSize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "unbounded" {
            return Ok(MaxSize::Unbounded);
        }
        match s.parse::<usize>() {
            Ok(0) => Err("maxsize must be at least 1".to_string()),
            Ok(c) => Ok(MaxSize::Bounded(c)),
            Err(_) => Err(format!("invalid maxsize {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SearchParams {
    /// Longest word length to try.
    pub maxlen: usize,
    pub maxsize: MaxSize,
    pub start_mode: StartMode,
    /// Search on the in-degree sorted relabeling of the automaton.
    pub permute_by_indegree: bool,
}

impl SearchParams {
    pub fn new(maxlen: usize, maxsize: MaxSize) -> Self {
        SearchParams {
            maxlen,
            maxsize,
            start_mode: StartMode::All,
            permute_by_indegree: false,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        match self.maxsize {
            MaxSize::Bounded(0) => Err(SearchError::ZeroMaxSize),
            _ => Ok(()),
        }
    }
}

/// Tweaks shared by [`cutoff_ibfs`] and [`synchronize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOptions {
    pub start_mode: StartMode,
    pub permute_by_indegree: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RecordId(u32);

/// How a frontier set was derived: the letter whose preimage produced it and
/// the record of the set it was taken from. Level-0 records have neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrontierRecord {
    pub letter: Option<usize>,
    pub predecessor: Option<RecordId>,
    pub level: usize,
}

/// Append-only store of every record created during one search.
#[derive(Debug, Default)]
pub struct RecordArena {
    records: Vec<FrontierRecord>,
}

impl RecordArena {
    fn push(&mut self, record: FrontierRecord) -> RecordId {
        let id = RecordId(self.records.len() as u32);
        self.records.push(record);
        id
    }

    pub fn get(&self, id: RecordId) -> FrontierRecord {
        self.records[id.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// The word assigned to a record: it maps the record's set onto the
    /// level-0 singleton at the root of its chain.
    ///
    /// Letters are read from the record itself down to level 1, which is the
    /// forward application order.
    pub fn word_for(&self, id: RecordId) -> Word {
        let mut letters = Vec::with_capacity(self.get(id).level);
        let mut current = Some(id);
        while let Some(id) = current {
            let record = self.get(id);
            if let Some(letter) = record.letter {
                letters.push(letter);
            }
            current = record.predecessor;
        }
        Word::new(letters)
    }

    /// The reset word for a goal entry; rejects entries whose set is not the
    /// whole state set.
    pub fn reconstruct_word(&self, entry: &FrontierEntry) -> Result<Word, SearchError> {
        if !entry.set.is_full() {
            return Err(SearchError::NotGoal {
                level: self.get(entry.record).level,
                size: entry.set.len(),
                n: entry.set.universe(),
            });
        }
        Ok(self.word_for(entry.record))
    }
}

/// A set on the frontier together with its derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontierEntry {
    pub set: StateSet,
    pub record: RecordId,
}

pub enum Step {
    /// The whole state set was produced; the entry is its goal record.
    Goal(FrontierEntry),
    /// The level finished without reaching the goal.
    Continue,
    /// No nonempty preimages remain.
    Exhausted,
}

/// Level-by-level driver of the inverse search.
pub struct InverseSearch<'a> {
    automaton: &'a Automaton,
    limit: usize,
    arena: RecordArena,
    frontier: Vec<FrontierEntry>,
    level: usize,
    levels: Vec<LevelStats>,
    frontier_sizes: Vec<usize>,
}

impl<'a> InverseSearch<'a> {
    pub fn new(automaton: &'a Automaton, maxsize: MaxSize, start_mode: StartMode) -> Self {
        let mut arena = RecordArena::default();
        let frontier: Vec<FrontierEntry> = automaton
            .start_set(start_mode)
            .into_iter()
            .map(|set| {
                let record = arena.push(FrontierRecord {
                    letter: None,
                    predecessor: None,
                    level: 0,
                });
                FrontierEntry { set, record }
            })
            .collect();
        let frontier_sizes = vec![frontier.len()];
        InverseSearch {
            automaton,
            limit: maxsize.limit(),
            arena,
            frontier,
            level: 0,
            levels: Vec::new(),
            frontier_sizes,
        }
    }

    /// Number of completed or goal-terminated levels.
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn frontier(&self) -> &[FrontierEntry] {
        &self.frontier
    }

    pub fn records(&self) -> &RecordArena {
        &self.arena
    }

    pub fn levels(&self) -> &[LevelStats] {
        &self.levels
    }

    pub fn frontier_sizes(&self) -> &[usize] {
        &self.frontier_sizes
    }

    /// Expands the current frontier by one level.
    pub fn step(&mut self) -> Step {
        let a = self.automaton;
        let n = a.states();
        self.level += 1;
        let mut stats = LevelStats {
            level: self.level,
            expanded: self.frontier.len(),
            ..LevelStats::default()
        };
        let mut trie: SetTrie<(RecordId, usize)> = SetTrie::new(n);
        let mut scratch = StateSet::empty(n);
        for entry in &self.frontier {
            for letter in 0..a.letters() {
                stats.steps += a.preimage_into(&entry.set, letter, &mut scratch);
                if scratch.is_empty() {
                    continue;
                }
                stats.generated += 1;
                if scratch.is_full() {
                    let record = self.arena.push(FrontierRecord {
                        letter: Some(letter),
                        predecessor: Some(entry.record),
                        level: self.level,
                    });
                    stats.steps += trie.steps();
                    stats.distinct = trie.len();
                    self.levels.push(stats);
                    return Step::Goal(FrontierEntry {
                        set: scratch,
                        record,
                    });
                }
                trie.insert(scratch.clone(), (entry.record, letter))
                    .expect("empty preimages are filtered");
            }
        }
        stats.steps += trie.steps();
        stats.distinct = trie.len();
        let level = self.level;
        let arena = &mut self.arena;
        self.frontier = trie
            .take_largest(self.limit)
            .into_iter()
            .map(|(set, (parent, letter))| FrontierEntry {
                set,
                record: arena.push(FrontierRecord {
                    letter: Some(letter),
                    predecessor: Some(parent),
                    level,
                }),
            })
            .collect();
        stats.kept = self.frontier.len();
        self.levels.push(stats);
        self.frontier_sizes.push(self.frontier.len());
        if self.frontier.is_empty() {
            Step::Exhausted
        } else {
            Step::Continue
        }
    }
}

/// Result of a bounded search.
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(SearchResult),
    /// No reset word of length at most `maxlen` was found.
    NotFound {
        frontier_sizes: Vec<usize>,
        levels: Vec<LevelStats>,
        elapsed: Duration,
    },
}

impl SearchOutcome {
    pub fn found(self) -> Option<SearchResult> {
        match self {
            SearchOutcome::Found(r) => Some(r),
            SearchOutcome::NotFound { .. } => None,
        }
    }

    pub fn frontier_sizes(&self) -> &[usize] {
        match self {
            SearchOutcome::Found(r) => &r.frontier_sizes,
            SearchOutcome::NotFound { frontier_sizes, .. } => frontier_sizes,
        }
    }

    pub fn levels(&self) -> &[LevelStats] {
        match self {
            SearchOutcome::Found(r) => &r.levels,
            SearchOutcome::NotFound { levels, .. } => levels,
        }
    }
}

/// Runs CutOff-IBFS for at most `params.maxlen` levels.
pub fn cutoff_ibfs(
    automaton: &Automaton,
    params: SearchParams,
) -> Result<SearchOutcome, SearchError> {
    params.validate()?;
    let started = Instant::now();
    if automaton.states() == 1 {
        return Ok(SearchOutcome::Found(SearchResult {
            length: 0,
            word: Word::empty(),
            algorithm: Algorithm::CutoffIbfs,
            frontier_sizes: vec![1],
            levels: Vec::new(),
            elapsed: started.elapsed(),
            params: Some(params),
        }));
    }

    let permuted;
    let target = if params.permute_by_indegree {
        permuted = automaton.indegree_permutation().0;
        &permuted
    } else {
        automaton
    };

    let mut search = InverseSearch::new(target, params.maxsize, params.start_mode);
    while search.level() < params.maxlen {
        match search.step() {
            Step::Goal(entry) => {
                let word = search.records().reconstruct_word(&entry)?;
                debug_assert!(automaton.is_synchronizing_word(&word));
                return Ok(SearchOutcome::Found(SearchResult {
                    length: word.len(),
                    word,
                    algorithm: Algorithm::CutoffIbfs,
                    frontier_sizes: search.frontier_sizes().to_vec(),
                    levels: search.levels().to_vec(),
                    elapsed: started.elapsed(),
                    params: Some(params),
                }));
            }
            Step::Continue => {}
            Step::Exhausted => break,
        }
    }
    Ok(SearchOutcome::NotFound {
        frontier_sizes: search.frontier_sizes().to_vec(),
        levels: search.levels().to_vec(),
        elapsed: started.elapsed(),
    })
}

/// Outcome of [`synchronize`].
#[derive(Debug, Clone)]
pub struct Synchronized {
    /// The shorter of the two words; its `elapsed` covers both runs.
    pub result: SearchResult,
    /// The Eppstein run that bounded the search.
    pub preceding: SearchResult,
}

impl Synchronized {
    /// Whether the word came from the preceding algorithm.
    pub fn fell_back(&self) -> bool {
        self.result.algorithm == Algorithm::Eppstein
    }
}

/// Eppstein's greedy algorithm followed by CutOff-IBFS looking for a strictly
/// shorter word. Returns the Eppstein word when the search finds none.
pub fn synchronize(
    automaton: &Automaton,
    maxsize: MaxSize,
    options: SearchOptions,
) -> Result<Synchronized, SearchError> {
    let started = Instant::now();
    let preceding = eppstein_greedy(automaton)?;
    let params = SearchParams {
        maxlen: preceding.length.saturating_sub(1),
        maxsize,
        start_mode: options.start_mode,
        permute_by_indegree: options.permute_by_indegree,
    };
    let mut result = if preceding.length == 0 {
        preceding.clone()
    } else {
        match cutoff_ibfs(automaton, params)? {
            SearchOutcome::Found(r) => r,
            SearchOutcome::NotFound {
                frontier_sizes,
                levels,
                ..
            } => SearchResult {
                frontier_sizes,
                levels,
                params: Some(params),
                ..preceding.clone()
            },
        }
    };
    result.elapsed = started.elapsed();
    Ok(Synchronized { result, preceding })
}
