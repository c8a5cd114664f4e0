//! Deduplicating store of state sets, bucketed by cardinality.
//!
//! Each bucket is a trie over the ascending member sequence of its sets, so an
//! insertion walks at most `|S| <= n` edges. Reading the buckets from the
//! largest cardinality down, each in preorder with children visited in
//! ascending state order, yields the sets sorted by descending cardinality
//! and lexicographically within a cardinality, with no comparison sort.

use thiserror::Error;

use crate::state_set::StateSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("the empty set cannot be stored in a set trie")]
pub struct EmptySetError;

/// Outcome of [`SetTrie::insert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insertion {
    New,
    /// The set was already present; the stored payload is unchanged.
    Duplicate,
}

#[derive(Default)]
struct Node {
    /// Sorted by state.
    children: Vec<(u32, u32)>,
    terminal: Option<u32>,
}

struct Bucket {
    nodes: Vec<Node>,
}

impl Bucket {
    fn new() -> Self {
        Bucket {
            nodes: vec![Node::default()],
        }
    }
}

pub struct SetTrie<P> {
    universe: usize,
    /// `buckets[c]` holds sets of cardinality `c`; index 0 is never used.
    buckets: Vec<Option<Bucket>>,
    entries: Vec<(StateSet, P)>,
    steps: u64,
}

impl<P> SetTrie<P> {
    /// An empty trie for subsets of `0..universe`.
    pub fn new(universe: usize) -> Self {
        SetTrie {
            universe,
            buckets: (0..=universe).map(|_| None).collect(),
            entries: Vec::new(),
            steps: 0,
        }
    }

    /// Number of distinct sets stored.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Trie edges walked by all insertions so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Stores `set` with `payload` unless an equal set is already present, in
    /// which case the first payload is kept.
    pub fn insert(&mut self, set: StateSet, payload: P) -> Result<Insertion, EmptySetError> {
        if set.is_empty() {
            return Err(EmptySetError);
        }
        assert_eq!(
            set.universe(),
            self.universe,
            "set universe does not match the trie"
        );
        let bucket = self.buckets[set.len()].get_or_insert_with(Bucket::new);
        let mut node = 0usize;
        for q in &set {
            self.steps += 1;
            let q = q as u32;
            node = match bucket.nodes[node]
                .children
                .binary_search_by_key(&q, |&(s, _)| s)
            {
                Ok(i) => bucket.nodes[node].children[i].1 as usize,
                Err(i) => {
                    let child = bucket.nodes.len();
                    bucket.nodes.push(Node::default());
                    bucket.nodes[node].children.insert(i, (q, child as u32));
                    child
                }
            };
        }
        if bucket.nodes[node].terminal.is_some() {
            return Ok(Insertion::Duplicate);
        }
        bucket.nodes[node].terminal = Some(self.entries.len() as u32);
        self.entries.push((set, payload));
        Ok(Insertion::New)
    }

    pub fn contains(&self, set: &StateSet) -> bool {
        if set.is_empty() || set.universe() != self.universe {
            return false;
        }
        let Some(bucket) = &self.buckets[set.len()] else {
            return false;
        };
        let mut node = 0usize;
        for q in set {
            match bucket.nodes[node]
                .children
                .binary_search_by_key(&(q as u32), |&(s, _)| s)
            {
                Ok(i) => node = bucket.nodes[node].children[i].1 as usize,
                Err(_) => return false,
            }
        }
        bucket.nodes[node].terminal.is_some()
    }

    /// Consumes the trie and returns at most `limit` sets with their payloads,
    /// by descending cardinality and then ascending lexicographic order of the
    /// member sequences.
    pub fn take_largest(self, limit: usize) -> Vec<(StateSet, P)> {
        let mut order = Vec::with_capacity(limit.min(self.entries.len()));
        let mut stack = Vec::new();
        'buckets: for bucket in self.buckets.iter().rev().flatten() {
            stack.push(0u32);
            while let Some(node) = stack.pop() {
                let node = &bucket.nodes[node as usize];
                if let Some(entry) = node.terminal {
                    if order.len() == limit {
                        break 'buckets;
                    }
                    order.push(entry);
                }
                stack.extend(node.children.iter().rev().map(|&(_, child)| child));
            }
        }
        let mut entries: Vec<Option<(StateSet, P)>> = self.entries.into_iter().map(Some).collect();
        order
            .into_iter()
            .map(|i| {
                entries[i as usize]
                    .take()
                    .expect("each entry is listed once")
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn set(n: usize, states: &[usize]) -> StateSet {
        StateSet::from_states(n, states.iter().copied())
    }

    fn members(taken: &[(StateSet, usize)]) -> Vec<Vec<usize>> {
        taken.iter().map(|(s, _)| s.iter().collect()).collect()
    }

    #[test]
    fn duplicate_insert_keeps_size_and_first_payload() {
        let mut t = SetTrie::new(6);
        assert_eq!(t.insert(set(6, &[1, 3]), 10), Ok(Insertion::New));
        assert_eq!(t.insert(set(6, &[1, 3]), 20), Ok(Insertion::Duplicate));
        assert_eq!(t.len(), 1);
        assert_eq!(t.take_largest(5), vec![(set(6, &[1, 3]), 10)]);
    }

    #[test]
    fn different_cardinalities_are_distinct() {
        let mut t = SetTrie::new(6);
        assert_eq!(t.insert(set(6, &[1, 3]), 0), Ok(Insertion::New));
        assert_eq!(t.insert(set(6, &[1, 3, 5]), 1), Ok(Insertion::New));
        assert_eq!(t.len(), 2);
        assert!(t.contains(&set(6, &[1, 3])));
        assert!(!t.contains(&set(6, &[1])));
        assert!(!t.contains(&set(6, &[3, 5])));
    }

    #[test]
    fn rejects_empty_set() {
        let mut t = SetTrie::new(3);
        assert_eq!(t.insert(StateSet::empty(3), ()), Err(EmptySetError));
        assert!(t.is_empty());
    }

    #[test]
    fn take_largest_orders_by_cardinality() {
        let mut t = SetTrie::new(4);
        for (i, s) in [&[1][..], &[2, 3], &[0, 1, 2]].into_iter().enumerate() {
            t.insert(set(4, s), i).unwrap();
        }
        assert_eq!(members(&t.take_largest(2)), vec![vec![0, 1, 2], vec![2, 3]]);
    }

    #[test]
    fn take_largest_ties_are_lexicographic() {
        let mut t = SetTrie::new(4);
        t.insert(set(4, &[2]), 0).unwrap();
        t.insert(set(4, &[1]), 1).unwrap();
        assert_eq!(members(&t.take_largest(5)), vec![vec![1], vec![2]]);

        let mut t = SetTrie::new(5);
        for s in [&[1, 4][..], &[0, 3], &[1, 2], &[0, 4]] {
            t.insert(set(5, s), 0).unwrap();
        }
        assert_eq!(
            members(&t.take_largest(10)),
            vec![vec![0, 3], vec![0, 4], vec![1, 2], vec![1, 4]]
        );
    }

    #[test]
    fn insertion_steps_are_set_sizes() {
        let mut t = SetTrie::new(100);
        t.insert(StateSet::full(100), ()).unwrap();
        t.insert(set(100, &[5, 7]), ()).unwrap();
        t.insert(set(100, &[5, 7]), ()).unwrap();
        assert_eq!(t.steps(), 104);
    }

    proptest! {
        #[test]
        fn stores_distinct_sets_and_takes_the_largest(
            n in 1usize..=10,
            masks in prop::collection::vec(1u16..1024, 1..80),
            limit in 1usize..30,
        ) {
            let mut t = SetTrie::new(n);
            let mut distinct = BTreeSet::new();
            for (i, m) in masks.iter().enumerate() {
                let members: Vec<usize> = (0..n).filter(|q| m >> q & 1 == 1).collect();
                if members.is_empty() {
                    continue;
                }
                let fresh = distinct.insert(members.clone());
                let outcome = t.insert(StateSet::from_states(n, members), i).unwrap();
                prop_assert_eq!(outcome == Insertion::New, fresh);
            }
            prop_assert_eq!(t.len(), distinct.len());

            // Reference order: descending cardinality, then lexicographic.
            let mut expected: Vec<Vec<usize>> = distinct.into_iter().collect();
            expected.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
            expected.truncate(limit);
            let taken = t.take_largest(limit);
            prop_assert_eq!(members(&taken), expected);
        }
    }
}
