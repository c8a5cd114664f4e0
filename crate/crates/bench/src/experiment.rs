//! Random-automata experiments: every configured algorithm runs on the same
//! automata, one CSV row per (n, trial, algorithm).
//!
//! CSV columns, in order: `n,k,trial,seed,algorithm,length,time_s,frontier_peak`.
//! `length` is empty for non-synchronizing samples, `time_s` is empty when
//! timing is disabled.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use ibfs_core::generate::PRNG_NAME;
use ibfs_core::{random_automaton, SearchOptions};
use rayon::prelude::*;
use serde::Serialize;

use crate::algo::{run_algorithm, AlgoSpec, RunOutcome};
use crate::error::BenchError;

/// Environment variable holding the number of worker threads.
pub const THREADS_ENV: &str = "IBFS_BENCH_THREADS";

pub const DEFAULT_NS: [usize; 3] = [50, 100, 200];
pub const DEFAULT_TRIALS: usize = 200;

/// Largest `n` the exact oracle accepts in an experiment.
const EXACT_LIMIT: usize = ibfs_core::exact::DEFAULT_EXACT_LIMIT;

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub ns: Vec<usize>,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub algorithms: Vec<AlgoSpec>,
    pub options: SearchOptions,
    /// Record wall times; disable for byte-reproducible output.
    pub timing: bool,
    /// Worker threads; `None` reads [`THREADS_ENV`], then uses all cores.
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    /// n = 100, 200, ..., 1000 with 10,000 automata each.
    pub fn full_scale(mut self) -> Self {
        self.ns = (1..=10).map(|i| i * 100).collect();
        self.trials = 10_000;
        self
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let fail = |msg: String| Err(BenchError::Config(msg));
        if self.trials == 0 {
            return fail("trials must be at least 1".into());
        }
        if self.k == 0 {
            return fail("k must be at least 1".into());
        }
        if self.ns.is_empty() {
            return fail("no automaton sizes given".into());
        }
        if let Some(&n) = self.ns.iter().find(|&&n| n == 0) {
            return fail(format!("invalid automaton size {n}"));
        }
        if self.algorithms.is_empty() {
            return fail("no algorithms given".into());
        }
        for (i, algo) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].contains(algo) {
                return fail(format!("algorithm {algo} listed twice"));
            }
        }
        if self.algorithms.contains(&AlgoSpec::Exact) {
            if let Some(&n) = self.ns.iter().find(|&&n| n > EXACT_LIMIT) {
                return fail(format!(
                    "exact oracle is limited to n <= {EXACT_LIMIT}, got n = {n}"
                ));
            }
        }
        if self.threads == Some(0) {
            return fail("threads must be at least 1".into());
        }
        Ok(())
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            ns: DEFAULT_NS.to_vec(),
            k: 2,
            trials: DEFAULT_TRIALS,
            seed: 1,
            algorithms: vec![
                AlgoSpec::Eppstein,
                AlgoSpec::Cutoff(crate::algo::MaxSizeSpec::Log),
                AlgoSpec::Cutoff(crate::algo::MaxSizeSpec::N),
            ],
            options: SearchOptions::default(),
            timing: true,
            threads: None,
        }
    }
}

/// Seed of the automaton used for trial `trial` at size `n`.
pub fn trial_seed(base: u64, n: usize, trial: usize) -> u64 {
    fn mix(mut z: u64) -> u64 {
        // splitmix64 finalizer
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    mix(mix(mix(base) ^ n as u64) ^ trial as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub n: usize,
    pub k: usize,
    pub trial: usize,
    pub seed: u64,
    pub algorithm: String,
    pub length: Option<usize>,
    pub time_s: Option<f64>,
    pub frontier_peak: usize,
    /// Time of the Eppstein run embedded in a CutOff-IBFS run.
    #[serde(skip)]
    pub preceding_time_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub n: usize,
    pub algorithm: String,
    pub runs: usize,
    /// Rows excluded because the automaton is not synchronizing.
    pub excluded: usize,
    pub mean_length: Option<f64>,
    pub mean_time_s: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub rows: Vec<TrialRow>,
    pub summary: Vec<SummaryRow>,
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Experiment, BenchError> {
    config.validate()?;
    let threads = match config.threads {
        Some(t) => t,
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => v
                .parse()
                .ok()
                .filter(|&t| t > 0)
                .ok_or_else(|| BenchError::Config(format!("invalid {THREADS_ENV}={v:?}")))?,
            Err(_) => 0,
        },
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| BenchError::Config(e.to_string()))?;

    let jobs: Vec<(usize, usize)> = config
        .ns
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    let per_trial: Vec<Result<Vec<TrialRow>, BenchError>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(n, t)| run_trial(config, n, t))
            .collect()
    });
    let mut rows = Vec::with_capacity(jobs.len() * config.algorithms.len());
    for trial in per_trial {
        rows.extend(trial?);
    }
    let summary = summarize(config, &rows);
    Ok(Experiment {
        config: config.clone(),
        rows,
        summary,
    })
}

fn run_trial(
    config: &ExperimentConfig,
    n: usize,
    trial: usize,
) -> Result<Vec<TrialRow>, BenchError> {
    let seed = trial_seed(config.seed, n, trial);
    let automaton = random_automaton(n, config.k, seed);
    automaton.build_inverse();
    config
        .algorithms
        .iter()
        .map(|&algo| {
            let run = run_algorithm(&automaton, algo, config.options, None)?;
            let (length, frontier_peak) = match &run.outcome {
                RunOutcome::Found(r) => (Some(r.length), r.frontier_peak()),
                _ => (None, 0),
            };
            Ok(TrialRow {
                n,
                k: config.k,
                trial,
                seed,
                algorithm: algo.to_string(),
                length,
                time_s: config.timing.then_some(run.elapsed.as_secs_f64()),
                frontier_peak,
                preceding_time_s: run
                    .preceding
                    .filter(|_| config.timing)
                    .map(|d| d.as_secs_f64()),
            })
        })
        .collect()
}

fn summarize(config: &ExperimentConfig, rows: &[TrialRow]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(usize, usize), Vec<&TrialRow>> = BTreeMap::new();
    for row in rows {
        let algo = config
            .algorithms
            .iter()
            .position(|a| a.to_string() == row.algorithm)
            .expect("rows only carry configured algorithms");
        groups.entry((row.n, algo)).or_default().push(row);
    }
    groups
        .into_iter()
        .map(|((n, algo), group)| {
            let lengths: Vec<f64> = group
                .iter()
                .filter_map(|r| r.length)
                .map(|l| l as f64)
                .collect();
            let times: Vec<f64> = group
                .iter()
                .filter(|r| r.length.is_some())
                .filter_map(|r| r.time_s)
                .collect();
            SummaryRow {
                n,
                algorithm: config.algorithms[algo].to_string(),
                runs: group.len(),
                excluded: group.len() - lengths.len(),
                mean_length: mean(&lengths),
                mean_time_s: mean(&times),
            }
        })
        .collect()
}

fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

impl Experiment {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), BenchError> {
        let mut writer = csv::Writer::from_writer(out);
        for row in &self.rows {
            writer.serialize(row)?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn csv_string(&self) -> Result<String, BenchError> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    /// Metadata lines (prefixed `#`) followed by one line per (n, algorithm).
    pub fn summary_text(&self) -> String {
        let c = &self.config;
        let excluded: usize = self
            .summary
            .iter()
            .filter(|s| s.algorithm == self.summary[0].algorithm)
            .map(|s| s.excluded)
            .sum();
        let mut out = String::new();
        let ns: Vec<String> = c.ns.iter().map(|n| n.to_string()).collect();
        let algos: Vec<String> = c.algorithms.iter().map(|a| a.to_string()).collect();
        writeln!(
            out,
            "# prng={PRNG_NAME} seed={} k={} trials={} n={} algorithms={}",
            c.seed,
            c.k,
            c.trials,
            ns.join(","),
            algos.join(",")
        )
        .unwrap();
        writeln!(
            out,
            "# start_mode={} permute_indegree={} timing={}",
            c.options.start_mode, c.options.permute_by_indegree, c.timing
        )
        .unwrap();
        writeln!(
            out,
            "# non_synchronizing_samples={excluded} (excluded from means)"
        )
        .unwrap();
        writeln!(out, "n,algorithm,runs,excluded,mean_length,mean_time_s").unwrap();
        for s in &self.summary {
            let fmt = |v: Option<f64>, digits: usize| {
                v.map(|x| format!("{x:.digits$}")).unwrap_or_default()
            };
            writeln!(
                out,
                "{},{},{},{},{},{}",
                s.n,
                s.algorithm,
                s.runs,
                s.excluded,
                fmt(s.mean_length, 4),
                fmt(s.mean_time_s, 6)
            )
            .unwrap();
        }
        out
    }

    pub fn summary_for(&self, n: usize, algorithm: AlgoSpec) -> Option<&SummaryRow> {
        let tag = algorithm.to_string();
        self.summary.iter().find(|s| s.n == n && s.algorithm == tag)
    }
}
