use thiserror::Error;

/// Problems constructing an [`Automaton`](crate::Automaton) from a raw table.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("an automaton needs at least one state")]
    NoStates,
    #[error("an automaton needs at least one letter")]
    NoLetters,
    #[error("transition table has {actual} entries, expected {expected}")]
    TableSize { expected: usize, actual: usize },
    #[error("transition ({state}, {letter}) leads to {target}, outside 0..{n}")]
    TargetOutOfRange {
        state: usize,
        letter: usize,
        target: usize,
        n: usize,
    },
    #[error("the Černý automaton is defined for n >= 2, got {0}")]
    CernyTooSmall(usize),
}

/// A malformed automaton text file. `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header \"n k\"")]
    MissingHeader,
    #[error("header must hold exactly two integers, found {0} fields")]
    HeaderArity(usize),
    #[error("invalid integer {0:?}")]
    InvalidInteger(String),
    #[error("header declares {0}, which must be at least 1")]
    ZeroDimension(&'static str),
    #[error("state {state} out of range (n = {n})")]
    StateOutOfRange { state: usize, n: usize },
    #[error("expected {expected} transitions, found {actual}")]
    RowLength { expected: usize, actual: usize },
    #[error("expected {expected} transition rows, found {actual}")]
    RowCount { expected: usize, actual: usize },
}

/// Failures of the synchronizing algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("maxsize must be at least 1")]
    ZeroMaxSize,
    #[error("record at level {level} holds {size} of {n} states, not a goal set")]
    NotGoal { level: usize, size: usize, n: usize },
    #[error("exact search is limited to {limit} states, automaton has {n}")]
    InstanceTooLarge { n: usize, limit: usize },
    #[error("automaton is not synchronizing")]
    NotSynchronizing,
}
