//! Algorithm selection shared by single runs and experiments.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use ibfs_core::{
    cutoff_ibfs, eppstein_greedy, exact_shortest, synchronize, Automaton, MaxSize, SearchError,
    SearchOptions, SearchOutcome, SearchParams, SearchResult,
};

/// Frontier cap, possibly relative to the automaton size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaxSizeSpec {
    /// `max(1, ceil(log2 n))`.
    Log,
    /// The number of states.
    N,
    Value(usize),
    Unbounded,
}

impl MaxSizeSpec {
    pub fn resolve(self, n: usize) -> MaxSize {
        match self {
            MaxSizeSpec::Log => MaxSize::log2(n),
            MaxSizeSpec::N => MaxSize::Bounded(n.max(1)),
            MaxSizeSpec::Value(c) => MaxSize::Bounded(c),
            MaxSizeSpec::Unbounded => MaxSize::Unbounded,
        }
    }
}

impl FromStr for MaxSizeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "log" => Ok(MaxSizeSpec::Log),
            "n" => Ok(MaxSizeSpec::N),
            "unbounded" => Ok(MaxSizeSpec::Unbounded),
            _ => match s.parse::<usize>() {
                Ok(0) => Err("maxsize must be at least 1".into()),
                Ok(c) => Ok(MaxSizeSpec::Value(c)),
                Err(_) => Err(format!(
                    "invalid maxsize {s:?} (expected log, n, unbounded or a positive integer)"
                )),
            },
        }
    }
}

impl fmt::Display for MaxSizeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxSizeSpec::Log => f.write_str("log"),
            MaxSizeSpec::N => f.write_str("n"),
            MaxSizeSpec::Value(c) => write!(f, "{c}"),
            MaxSizeSpec::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// An algorithm column of an experiment.
///
/// Tags: `eppstein`, `exact`, and `cutoff-ibfs:<maxsize>`; a bare
/// `cutoff-ibfs` takes the cap supplied by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgoSpec {
    Eppstein,
    /// Eppstein followed by CutOff-IBFS.
    Cutoff(MaxSizeSpec),
    Exact,
}

impl AlgoSpec {
    pub fn parse_with_default(s: &str, default_cap: MaxSizeSpec) -> Result<Self, String> {
        match s {
            "eppstein" => Ok(AlgoSpec::Eppstein),
            "exact" => Ok(AlgoSpec::Exact),
            "cutoff-ibfs" => Ok(AlgoSpec::Cutoff(default_cap)),
            _ => match s.strip_prefix("cutoff-ibfs:") {
                Some(cap) => Ok(AlgoSpec::Cutoff(cap.parse()?)),
                None => Err(format!(
                    "unknown algorithm {s:?} (expected eppstein, exact or cutoff-ibfs[:maxsize])"
                )),
            },
        }
    }

    /// Parses a comma-separated list.
    pub fn parse_list(s: &str, default_cap: MaxSizeSpec) -> Result<Vec<Self>, String> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| Self::parse_with_default(t, default_cap))
            .collect()
    }
}

impl FromStr for AlgoSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_with_default(s, MaxSizeSpec::N)
    }
}

impl fmt::Display for AlgoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgoSpec::Eppstein => f.write_str("eppstein"),
            AlgoSpec::Exact => f.write_str("exact"),
            AlgoSpec::Cutoff(cap) => write!(f, "cutoff-ibfs:{cap}"),
        }
    }
}

/// One algorithm run on one automaton.
#[derive(Debug, Clone)]
pub struct Run {
    pub outcome: RunOutcome,
    /// Wall time of the whole run, including any preceding algorithm.
    pub elapsed: Duration,
    /// Wall time of the embedded Eppstein run, for CutOff-IBFS.
    pub preceding: Option<Duration>,
}

#[derive(Debug, Clone)]
pub enum RunOutcome {
    Found(SearchResult),
    /// A bounded search found no word; carries the per-level frontier sizes.
    NotFound(Vec<usize>),
    NotSynchronizing,
}

impl RunOutcome {
    pub fn result(&self) -> Option<&SearchResult> {
        match self {
            RunOutcome::Found(r) => Some(r),
            _ => None,
        }
    }
}

/// Runs `algo` on `automaton`.
///
/// CutOff-IBFS runs behind Eppstein with `maxlen` derived from its word,
/// unless `maxlen` is given, in which case the search runs alone.
pub fn run_algorithm(
    automaton: &Automaton,
    algo: AlgoSpec,
    options: SearchOptions,
    maxlen: Option<usize>,
) -> Result<Run, SearchError> {
    let started = Instant::now();
    let mut preceding = None;
    let outcome = match algo {
        AlgoSpec::Eppstein => lift(eppstein_greedy(automaton))?,
        AlgoSpec::Exact => lift(exact_shortest(automaton))?,
        AlgoSpec::Cutoff(cap) => {
            let maxsize = cap.resolve(automaton.states());
            match maxlen {
                Some(maxlen) => {
                    let params = SearchParams {
                        maxlen,
                        maxsize,
                        start_mode: options.start_mode,
                        permute_by_indegree: options.permute_by_indegree,
                    };
                    match cutoff_ibfs(automaton, params)? {
                        SearchOutcome::Found(r) => RunOutcome::Found(r),
                        SearchOutcome::NotFound { frontier_sizes, .. } => {
                            RunOutcome::NotFound(frontier_sizes)
                        }
                    }
                }
                None => match synchronize(automaton, maxsize, options) {
                    Ok(s) => {
                        preceding = Some(s.preceding.elapsed);
                        RunOutcome::Found(s.result)
                    }
                    Err(SearchError::NotSynchronizing) => RunOutcome::NotSynchronizing,
                    Err(e) => return Err(e),
                },
            }
        }
    };
    Ok(Run {
        outcome,
        elapsed: started.elapsed(),
        preceding,
    })
}

fn lift(result: Result<SearchResult, SearchError>) -> Result<RunOutcome, SearchError> {
    match result {
        Ok(r) => Ok(RunOutcome::Found(r)),
        Err(SearchError::NotSynchronizing) => Ok(RunOutcome::NotSynchronizing),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tags() {
        assert_eq!("eppstein".parse(), Ok(AlgoSpec::Eppstein));
        assert_eq!("exact".parse(), Ok(AlgoSpec::Exact));
        assert_eq!(
            "cutoff-ibfs:log".parse(),
            Ok(AlgoSpec::Cutoff(MaxSizeSpec::Log))
        );
        assert_eq!(
            "cutoff-ibfs:32".parse(),
            Ok(AlgoSpec::Cutoff(MaxSizeSpec::Value(32)))
        );
        assert_eq!(
            AlgoSpec::parse_with_default("cutoff-ibfs", MaxSizeSpec::Unbounded),
            Ok(AlgoSpec::Cutoff(MaxSizeSpec::Unbounded))
        );
        assert!("cutoff-ibfs:0".parse::<AlgoSpec>().is_err());
        assert!("cycle".parse::<AlgoSpec>().is_err());
    }

    #[test]
    fn tags_round_trip() {
        let list = AlgoSpec::parse_list(
            "eppstein, cutoff-ibfs:n,cutoff-ibfs:log,cutoff-ibfs:7,cutoff-ibfs:unbounded,exact",
            MaxSizeSpec::N,
        )
        .unwrap();
        let tags: Vec<String> = list.iter().map(|a| a.to_string()).collect();
        assert_eq!(
            tags.join(","),
            "eppstein,cutoff-ibfs:n,cutoff-ibfs:log,cutoff-ibfs:7,cutoff-ibfs:unbounded,exact"
        );
    }

    #[test]
    fn resolves_caps() {
        assert_eq!(MaxSizeSpec::Log.resolve(100), MaxSize::Bounded(7));
        assert_eq!(MaxSizeSpec::N.resolve(100), MaxSize::Bounded(100));
        assert_eq!(MaxSizeSpec::Value(3).resolve(100), MaxSize::Bounded(3));
    }
}
