//! One algorithm on one automaton.

use std::fmt::Write as _;
use std::path::PathBuf;

use ibfs_core::{cerny, format, random_automaton, Automaton, SearchOptions};

use crate::algo::{run_algorithm, AlgoSpec, Run, RunOutcome};
use crate::error::BenchError;

pub const EXIT_FOUND: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_FOUND: i32 = 3;
pub const EXIT_NOT_SYNCHRONIZING: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutomatonSource {
    Cerny(usize),
    Random { n: usize, k: usize, seed: u64 },
    File(PathBuf),
}

impl AutomatonSource {
    pub fn load(&self) -> Result<Automaton, BenchError> {
        match self {
            AutomatonSource::Cerny(n) => Ok(cerny(*n)?),
            AutomatonSource::Random { n, k, seed } => {
                if *n == 0 || *k == 0 {
                    return Err(BenchError::Config(
                        "random automata need n >= 1 and k >= 1".into(),
                    ));
                }
                Ok(random_automaton(*n, *k, *seed))
            }
            AutomatonSource::File(path) => {
                let text = std::fs::read_to_string(path)?;
                format::parse(&text).map_err(|source| BenchError::Parse {
                    path: path.display().to_string(),
                    source,
                })
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            AutomatonSource::Cerny(n) => format!("cerny({n})"),
            AutomatonSource::Random { n, k, seed } => format!(
                "random(n={n}, k={k}, seed={seed}, prng={})",
                ibfs_core::generate::PRNG_NAME
            ),
            AutomatonSource::File(path) => path.display().to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SingleRun {
    pub source: AutomatonSource,
    pub algorithm: AlgoSpec,
    pub options: SearchOptions,
    /// Run CutOff-IBFS alone with this bound instead of behind Eppstein.
    pub maxlen: Option<usize>,
}

pub struct Report {
    pub source: String,
    pub algorithm: AlgoSpec,
    pub states: usize,
    pub letters: usize,
    pub run: Run,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.run.outcome {
            RunOutcome::Found(_) => EXIT_FOUND,
            RunOutcome::NotFound(_) => EXIT_NOT_FOUND,
            RunOutcome::NotSynchronizing => EXIT_NOT_SYNCHRONIZING,
        }
    }

    pub fn length(&self) -> Option<usize> {
        self.run.outcome.result().map(|r| r.length)
    }

    pub fn render(&self, show_word: bool) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "automaton: {} (n={}, k={})",
            self.source, self.states, self.letters
        )
        .unwrap();
        writeln!(out, "algorithm: {}", self.algorithm).unwrap();
        let frontier = |sizes: &[usize]| {
            let peak = sizes.iter().skip(1).max().copied().unwrap_or(0);
            format!("levels={} peak={}", sizes.len().saturating_sub(1), peak)
        };
        match &self.run.outcome {
            RunOutcome::Found(r) => {
                writeln!(out, "status: found").unwrap();
                writeln!(out, "length: {}", r.length).unwrap();
                writeln!(out, "word source: {}", r.algorithm).unwrap();
                if show_word {
                    writeln!(out, "word: {}", r.word).unwrap();
                }
                writeln!(out, "frontier: {}", frontier(&r.frontier_sizes)).unwrap();
            }
            RunOutcome::NotFound(sizes) => {
                writeln!(out, "status: not found").unwrap();
                writeln!(out, "frontier: {}", frontier(sizes)).unwrap();
            }
            RunOutcome::NotSynchronizing => {
                writeln!(out, "status: not synchronizing").unwrap();
            }
        }
        if let Some(pre) = self.run.preceding {
            writeln!(out, "eppstein_time_s: {:.6}", pre.as_secs_f64()).unwrap();
        }
        writeln!(out, "time_s: {:.6}", self.run.elapsed.as_secs_f64()).unwrap();
        out
    }
}

pub fn run_single(spec: &SingleRun) -> Result<Report, BenchError> {
    let automaton = spec.source.load()?;
    let run = run_algorithm(&automaton, spec.algorithm, spec.options, spec.maxlen)?;
    Ok(Report {
        source: spec.source.describe(),
        algorithm: spec.algorithm,
        states: automaton.states(),
        letters: automaton.letters(),
        run,
    })
}
