//! Short reset words for synchronizing automata.
//!
//! The main entry point is [`synchronize`], which runs Eppstein's greedy
//! algorithm to get an initial reset word and then [`cutoff_ibfs`], an inverse
//! breadth-first search over the power automaton that keeps only the largest
//! sets of every level, to look for a shorter one. [`exact_shortest`] provides
//! exact answers for small automata.

pub mod automaton;
pub mod eppstein;
mod error;
pub mod exact;
pub mod format;
pub mod generate;
pub mod ibfs;
mod result;
pub mod set_trie;
pub mod state_set;

pub use automaton::{Automaton, StartMode, Word};
pub use eppstein::{eppstein_greedy, PairTable};
pub use error::{AutomatonError, ParseError, ParseErrorKind, SearchError};
pub use exact::{exact_shortest, exact_shortest_with_limit};
pub use generate::{cerny, random_automaton};
pub use ibfs::{
    cutoff_ibfs, synchronize, MaxSize, SearchOptions, SearchOutcome, SearchParams, Synchronized,
};
pub use result::{Algorithm, LevelStats, SearchResult};
pub use set_trie::SetTrie;
pub use state_set::StateSet;
