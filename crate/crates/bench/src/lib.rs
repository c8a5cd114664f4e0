//! Experiment harness and single-run driver for `ibfs-core`.

pub mod algo;
mod error;
pub mod experiment;
pub mod single;

pub use algo::{run_algorithm, AlgoSpec, MaxSizeSpec, Run, RunOutcome};
pub use error::BenchError;
pub use experiment::{
    run_experiment, trial_seed, Experiment, ExperimentConfig, SummaryRow, TrialRow,
};
pub use single::{run_single, AutomatonSource, Report, SingleRun};
