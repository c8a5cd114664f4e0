//! Complete deterministic automata and the letter actions on state sets.

use std::fmt;
use std::sync::OnceLock;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::AutomatonError;
use crate::state_set::StateSet;

/// A complete DFA over states `0..n` and letters `0..k`.
///
/// The transition table is immutable once built. The inverse table used by
/// [`Automaton::preimage`] is computed on first use and cached; the cache is
/// initialised through a `OnceLock`, so sharing an automaton across threads
/// before the first preimage call is fine.
pub struct Automaton {
    n: usize,
    k: usize,
    /// Row-major: `delta[q * k + a]`.
    delta: Vec<u32>,
    inverse: OnceLock<Inverse>,
}

/// Letter-major CSR inverse: the states mapped to `p` by letter `a` are
/// `sources[a * n + offsets[a * (n + 1) + p] .. a * n + offsets[a * (n + 1) + p + 1]]`.
struct Inverse {
    offsets: Vec<u32>,
    sources: Vec<u32>,
}

impl Automaton {
    /// Builds an automaton from a row-major table, `table[q * k + a] = delta(q, a)`.
    pub fn from_table(n: usize, k: usize, table: Vec<usize>) -> Result<Self, AutomatonError> {
        if n == 0 {
            return Err(AutomatonError::NoStates);
        }
        if k == 0 {
            return Err(AutomatonError::NoLetters);
        }
        if table.len() != n * k {
            return Err(AutomatonError::TableSize {
                expected: n * k,
                actual: table.len(),
            });
        }
        assert!(n <= u32::MAX as usize, "state count exceeds u32 range");
        let mut delta = Vec::with_capacity(n * k);
        for (i, &target) in table.iter().enumerate() {
            if target >= n {
                return Err(AutomatonError::TargetOutOfRange {
                    state: i / k,
                    letter: i % k,
                    target,
                    n,
                });
            }
            delta.push(target as u32);
        }
        Ok(Automaton {
            n,
            k,
            delta,
            inverse: OnceLock::new(),
        })
    }

    /// Builds an automaton from one transition function per letter,
    /// `letters[a][q] = delta(q, a)`.
    pub fn from_letters(n: usize, letters: &[Vec<usize>]) -> Result<Self, AutomatonError> {
        let k = letters.len();
        if let Some(bad) = letters.iter().find(|row| row.len() != n) {
            return Err(AutomatonError::TableSize {
                expected: n * k,
                actual: bad.len() * k,
            });
        }
        let mut table = vec![0; n * k];
        for (a, row) in letters.iter().enumerate() {
            for (q, &target) in row.iter().enumerate() {
                table[q * k + a] = target;
            }
        }
        Self::from_table(n, k, table)
    }

    #[inline]
    pub fn states(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn letters(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn next(&self, state: usize, letter: usize) -> usize {
        self.delta[state * self.k + letter] as usize
    }

    /// The transition function of a single letter, indexed by state.
    pub fn letter_action(&self, letter: usize) -> Vec<usize> {
        (0..self.n).map(|q| self.next(q, letter)).collect()
    }

    /// Row-major copy of the transition table.
    pub fn table(&self) -> Vec<usize> {
        self.delta.iter().map(|&q| q as usize).collect()
    }

    fn inverse(&self) -> &Inverse {
        self.inverse.get_or_init(|| {
            let (n, k) = (self.n, self.k);
            let mut offsets = vec![0u32; k * (n + 1)];
            for q in 0..n {
                for a in 0..k {
                    offsets[a * (n + 1) + self.next(q, a) + 1] += 1;
                }
            }
            for a in 0..k {
                let row = &mut offsets[a * (n + 1)..(a + 1) * (n + 1)];
                for p in 1..=n {
                    row[p] += row[p - 1];
                }
            }
            let mut fill = offsets.clone();
            let mut sources = vec![0u32; k * n];
            for q in 0..n {
                for a in 0..k {
                    let slot = &mut fill[a * (n + 1) + self.next(q, a)];
                    sources[a * n + *slot as usize] = q as u32;
                    *slot += 1;
                }
            }
            Inverse { offsets, sources }
        })
    }

    /// Forces the inverse table to be built now rather than on first use.
    pub fn build_inverse(&self) {
        self.inverse();
    }

    /// States `q` with `delta(q, letter) = target`, ascending.
    pub fn sources(&self, target: usize, letter: usize) -> &[u32] {
        let inv = self.inverse();
        let row = letter * (self.n + 1);
        let lo = inv.offsets[row + target] as usize;
        let hi = inv.offsets[row + target + 1] as usize;
        &inv.sources[letter * self.n + lo..letter * self.n + hi]
    }

    /// Number of states sent to `target` by `letter`.
    pub fn indegree(&self, target: usize, letter: usize) -> usize {
        self.sources(target, letter).len()
    }

    /// `{ delta(q, letter) : q in set }`.
    pub fn image(&self, set: &StateSet, letter: usize) -> StateSet {
        let mut out = StateSet::empty(self.n);
        for q in set {
            out.insert(self.next(q, letter));
        }
        out
    }

    /// `{ q : delta(q, letter) in set }`.
    pub fn preimage(&self, set: &StateSet, letter: usize) -> StateSet {
        let mut out = StateSet::empty(self.n);
        self.preimage_into(set, letter, &mut out);
        out
    }

    /// Writes the preimage into `out` (cleared first). Returns the number of
    /// elementary steps: members of `set` visited plus sources written.
    pub fn preimage_into(&self, set: &StateSet, letter: usize, out: &mut StateSet) -> u64 {
        out.clear();
        let mut steps = 0u64;
        for p in set {
            let src = self.sources(p, letter);
            steps += 1 + src.len() as u64;
            for &q in src {
                out.insert(q as usize);
            }
        }
        steps
    }

    /// Image of `set` under the letters of `word`, applied left to right.
    pub fn image_of_word(&self, set: &StateSet, word: &Word) -> StateSet {
        let mut current = set.clone();
        for &a in word.letters() {
            current = self.image(&current, a);
        }
        current
    }

    /// Whether `word` maps every state to one state. Letters outside `0..k`
    /// make the word invalid and yield `false`.
    pub fn is_synchronizing_word(&self, word: &Word) -> bool {
        if word.letters().iter().any(|&a| a >= self.k) {
            return false;
        }
        self.image_of_word(&StateSet::full(self.n), word).len() == 1
    }

    /// Singletons to seed an inverse search from.
    ///
    /// A restricted mode that selects no state falls back to all singletons.
    /// [`StartMode::Sink`] also falls back when the transition digraph has more
    /// than one sink component, since such an automaton cannot be synchronizing.
    pub fn start_set(&self, mode: StartMode) -> Vec<StateSet> {
        let states: Vec<usize> = match mode {
            StartMode::All => Vec::new(),
            StartMode::Sink => self.sink_component().unwrap_or_default(),
            StartMode::HighIndegree => (0..self.n)
                .filter(|&p| (0..self.k).any(|a| self.indegree(p, a) >= 2))
                .collect(),
        };
        let states = if states.is_empty() {
            (0..self.n).collect()
        } else {
            states
        };
        states
            .into_iter()
            .map(|q| StateSet::singleton(self.n, q))
            .collect()
    }

    /// States of the unique strongly connected component with no outgoing
    /// edges, ascending. `None` if there are several such components.
    pub fn sink_component(&self) -> Option<Vec<usize>> {
        let mut graph = DiGraph::<(), ()>::with_capacity(self.n, self.n * self.k);
        for _ in 0..self.n {
            graph.add_node(());
        }
        for q in 0..self.n {
            for a in 0..self.k {
                graph.add_edge(NodeIndex::new(q), NodeIndex::new(self.next(q, a)), ());
            }
        }
        let components = tarjan_scc(&graph);
        let mut component_of = vec![0usize; self.n];
        for (c, members) in components.iter().enumerate() {
            for node in members {
                component_of[node.index()] = c;
            }
        }
        let mut has_exit = vec![false; components.len()];
        for q in 0..self.n {
            for a in 0..self.k {
                let p = self.next(q, a);
                if component_of[p] != component_of[q] {
                    has_exit[component_of[q]] = true;
                }
            }
        }
        let mut sinks = (0..components.len()).filter(|&c| !has_exit[c]);
        let sink = sinks.next()?;
        if sinks.next().is_some() {
            return None;
        }
        let mut states: Vec<usize> = components[sink].iter().map(|v| v.index()).collect();
        states.sort_unstable();
        Some(states)
    }

    /// Relabels states so that total in-degree is non-increasing in the new
    /// index, ties kept in original order.
    ///
    /// Returns the relabeled automaton and `relabel`, where `relabel[old] = new`.
    /// Letters are untouched, so reset words carry over unchanged.
    pub fn indegree_permutation(&self) -> (Automaton, Vec<usize>) {
        let mut indegree = vec![0usize; self.n];
        for &p in &self.delta {
            indegree[p as usize] += 1;
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&q| std::cmp::Reverse(indegree[q]));
        let mut relabel = vec![0usize; self.n];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let mut table = vec![0usize; self.n * self.k];
        for q in 0..self.n {
            for a in 0..self.k {
                table[relabel[q] * self.k + a] = relabel[self.next(q, a)];
            }
        }
        let permuted = Automaton::from_table(self.n, self.k, table)
            .expect("relabeling preserves table validity");
        (permuted, relabel)
    }
}

impl Clone for Automaton {
    fn clone(&self) -> Self {
        Automaton {
            n: self.n,
            k: self.k,
            delta: self.delta.clone(),
            inverse: OnceLock::new(),
        }
    }
}

impl PartialEq for Automaton {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.delta == other.delta
    }
}

impl Eq for Automaton {}

impl fmt::Debug for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Automaton")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("delta", &self.delta)
            .finish()
    }
}

/// Which singletons seed the inverse search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum StartMode {
    /// Every singleton.
    #[default]
    All,
    /// Singletons of the sink strongly connected component.
    Sink,
    /// Singletons of states with in-degree at least two under some letter.
    HighIndegree,
}

impl StartMode {
    pub fn as_str(self) -> &'static str {
        match self {
            StartMode::All => "all",
            StartMode::Sink => "sink",
            StartMode::HighIndegree => "high-indegree",
        }
    }
}

impl std::str::FromStr for StartMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(StartMode::All),
            "sink" => Ok(StartMode::Sink),
            "high-indegree" => Ok(StartMode::HighIndegree),
            other => Err(format!(
                "unknown start mode {other:?} (expected all, sink or high-indegree)"
            )),
        }
    }
}

impl fmt::Display for StartMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite sequence of letters, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: usize) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word(letters)
    }
}

/// Letters below 26 print as `a`..`z`; otherwise the word prints as
/// space-separated indices.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&a| a < 26) {
            for &a in &self.0 {
                write!(f, "{}", (b'a' + a as u8) as char)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cerny, random_automaton};
    use proptest::prelude::*;

    const A: usize = 0;
    const B: usize = 1;

    fn set(n: usize, states: &[usize]) -> StateSet {
        StateSet::from_states(n, states.iter().copied())
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(
            Automaton::from_table(0, 1, vec![]),
            Err(AutomatonError::NoStates)
        );
        assert_eq!(
            Automaton::from_table(2, 0, vec![]),
            Err(AutomatonError::NoLetters)
        );
        assert!(matches!(
            Automaton::from_table(2, 1, vec![0]),
            Err(AutomatonError::TableSize { .. })
        ));
        assert_eq!(
            Automaton::from_table(2, 1, vec![0, 2]),
            Err(AutomatonError::TargetOutOfRange {
                state: 1,
                letter: 0,
                target: 2,
                n: 2
            })
        );
    }

    #[test]
    fn image_examples_on_cerny_4() {
        let c4 = cerny(4).unwrap();
        assert_eq!(c4.image(&set(4, &[0]), A), set(4, &[1]));
        assert_eq!(c4.image(&StateSet::empty(4), A), StateSet::empty(4));
        assert_eq!(c4.image(&StateSet::full(4), B), set(4, &[1, 2, 3]));
    }

    #[test]
    fn preimage_examples_on_cerny_4() {
        let c4 = cerny(4).unwrap();
        for letter in [A, B] {
            assert_eq!(c4.preimage(&StateSet::full(4), letter), StateSet::full(4));
            assert!(c4.preimage(&StateSet::empty(4), letter).is_empty());
        }
        assert_eq!(c4.preimage(&set(4, &[1]), B), set(4, &[0, 1]));
        assert!(c4.preimage(&set(4, &[0]), B).is_empty());
    }

    #[test]
    fn synchronizing_word_checks() {
        let c2 = cerny(2).unwrap();
        assert!(c2.is_synchronizing_word(&Word::new(vec![B])));
        assert!(!c2.is_synchronizing_word(&Word::empty()));
        assert!(!c2.is_synchronizing_word(&Word::new(vec![A])));
        assert!(!c2.is_synchronizing_word(&Word::new(vec![7])));
        let trivial = Automaton::from_table(1, 3, vec![0, 0, 0]).unwrap();
        assert!(trivial.is_synchronizing_word(&Word::empty()));
        // b(a^3 b)^2, the classic length-9 reset word of C4.
        let c4 = cerny(4).unwrap();
        let w = Word::new(vec![B, A, A, A, B, A, A, A, B]);
        assert!(c4.is_synchronizing_word(&w));
    }

    #[test]
    fn high_indegree_start_on_cerny_4() {
        let c4 = cerny(4).unwrap();
        assert_eq!(c4.start_set(StartMode::HighIndegree), vec![set(4, &[1])]);
    }

    #[test]
    fn restricted_start_falls_back_to_all() {
        // Two permutation letters: no state has in-degree 2.
        let perms = Automaton::from_letters(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        let all: Vec<StateSet> = (0..3).map(|q| StateSet::singleton(3, q)).collect();
        assert_eq!(perms.start_set(StartMode::HighIndegree), all);
        // Strongly connected: sink component is everything.
        assert_eq!(perms.start_set(StartMode::Sink), all);
        assert_eq!(cerny(4).unwrap().start_set(StartMode::Sink).len(), 4);
    }

    #[test]
    fn sink_component_of_funnel() {
        // 0 -> 1 -> 2 <-> 3, so the sink component is {2, 3}.
        let a = Automaton::from_letters(4, &[vec![1, 2, 3, 2]]).unwrap();
        assert_eq!(a.sink_component(), Some(vec![2, 3]));
        assert_eq!(
            a.start_set(StartMode::Sink),
            vec![set(4, &[2]), set(4, &[3])]
        );
        // Two fixed points: two sink components, fall back to all.
        let split = Automaton::from_letters(3, &[vec![0, 0, 2]]).unwrap();
        assert_eq!(split.sink_component(), None);
        assert_eq!(split.start_set(StartMode::Sink).len(), 3);
    }

    #[test]
    fn indegree_permutation_of_cerny_4() {
        let c4 = cerny(4).unwrap();
        let (permuted, relabel) = c4.indegree_permutation();
        // In-degrees: 0 -> 1, 1 -> 3, 2 -> 2, 3 -> 2.
        assert_eq!(relabel, vec![3, 0, 1, 2]);
        for q in 0..4 {
            for a in 0..2 {
                assert_eq!(permuted.next(relabel[q], a), relabel[c4.next(q, a)]);
            }
        }
    }

    #[test]
    fn indegree_permutation_identity_when_sorted() {
        let a = Automaton::from_letters(3, &[vec![0, 0, 1]]).unwrap();
        let (permuted, relabel) = a.indegree_permutation();
        assert_eq!(relabel, vec![0, 1, 2]);
        assert_eq!(permuted, a);
    }

    #[test]
    fn word_display() {
        assert_eq!(Word::new(vec![1, 0, 1]).to_string(), "bab");
        assert_eq!(Word::new(vec![30, 2]).to_string(), "30 2");
    }

    proptest! {
        #[test]
        fn preimage_is_adjoint_to_transitions(n in 1usize..=12, k in 1usize..=3, seed: u64, mask: u16) {
            let a = random_automaton(n, k, seed);
            let s = StateSet::from_states(n, (0..n).filter(|q| mask >> q & 1 == 1));
            for letter in 0..k {
                let pre = a.preimage(&s, letter);
                for q in 0..n {
                    prop_assert_eq!(pre.contains(q), s.contains(a.next(q, letter)));
                }
                prop_assert!(a.image(&s, letter).len() <= s.len());
                prop_assert_eq!(a.preimage(&StateSet::full(n), letter).len(), n);
            }
        }

        #[test]
        fn inverse_partitions_states(n in 1usize..=40, k in 1usize..=4, seed: u64) {
            let a = random_automaton(n, k, seed);
            for letter in 0..k {
                let total: usize = (0..n).map(|p| a.sources(p, letter).len()).sum();
                prop_assert_eq!(total, n);
                for p in 0..n {
                    for &q in a.sources(p, letter) {
                        prop_assert_eq!(a.next(q as usize, letter), p);
                    }
                }
            }
        }

        #[test]
        fn indegree_permutation_is_isomorphism(n in 1usize..=30, k in 1usize..=3, seed: u64) {
            let a = random_automaton(n, k, seed);
            let (permuted, relabel) = a.indegree_permutation();
            let mut seen = vec![false; n];
            for &r in &relabel {
                prop_assert!(!seen[r]);
                seen[r] = true;
            }
            for q in 0..n {
                for l in 0..k {
                    prop_assert_eq!(permuted.next(relabel[q], l), relabel[a.next(q, l)]);
                }
            }
            let indeg: Vec<usize> = (0..n).map(|p| (0..k).map(|l| permuted.indegree(p, l)).sum()).collect();
            prop_assert!(indeg.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
