use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ibfs_bench::single::EXIT_ERROR;
use ibfs_bench::{
    run_experiment, run_single, AlgoSpec, AutomatonSource, BenchError, ExperimentConfig,
    MaxSizeSpec, SingleRun,
};
use ibfs_core::{format, SearchOptions, StartMode};

/// Short reset words for synchronizing automata.
#[derive(Parser)]
#[command(name = "ibfs-bench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on one automaton.
    ///
    /// Exit status: 0 found, 3 no word within --maxlen, 4 not synchronizing,
    /// 1 on errors.
    Run(RunArgs),
    /// Run algorithms on random automata and write a CSV of the results.
    Experiment(ExperimentArgs),
    /// Print an automaton in the text format.
    Generate(AutomatonArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Černý automaton with N states.
    #[arg(long, value_name = "N")]
    cerny: Option<usize>,
    /// Uniformly random automaton with N states and K letters.
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    random: Option<Vec<usize>>,
    /// Automaton file in the text format.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct AutomatonArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Seed for --random.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl AutomatonArgs {
    fn source(&self) -> AutomatonSource {
        self.source.resolve(self.seed)
    }
}

impl SourceArgs {
    fn resolve(&self, seed: u64) -> AutomatonSource {
        if let Some(n) = self.cerny {
            AutomatonSource::Cerny(n)
        } else if let Some(nk) = &self.random {
            AutomatonSource::Random {
                n: nk[0],
                k: nk[1],
                seed,
            }
        } else {
            AutomatonSource::File(self.file.clone().expect("clap enforces one source"))
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    /// Frontier cap for cutoff-ibfs: log, n, unbounded or a positive integer.
    #[arg(long, default_value = "n")]
    maxsize: MaxSizeSpec,
    /// Seed singletons: all, sink or high-indegree.
    #[arg(long, default_value = "all")]
    start_mode: StartMode,
    /// Relabel states by decreasing in-degree before searching.
    #[arg(long)]
    permute_indegree: bool,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            start_mode: self.start_mode,
            permute_by_indegree: self.permute_indegree,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    automaton: AutomatonArgs,
    /// eppstein, cutoff-ibfs[:maxsize] or exact.
    #[arg(long, default_value = "cutoff-ibfs")]
    algo: String,
    #[command(flatten)]
    search: SearchArgs,
    /// Run cutoff-ibfs alone up to this length instead of behind Eppstein.
    #[arg(long)]
    maxlen: Option<usize>,
    /// Print the reset word.
    #[arg(long)]
    word: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Automaton sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = ibfs_bench::experiment::DEFAULT_NS)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = ibfs_bench::experiment::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Comma-separated algorithm tags; bare cutoff-ibfs uses --maxsize.
    #[arg(long, default_value = "eppstein,cutoff-ibfs:log,cutoff-ibfs:n")]
    algos: String,
    #[command(flatten)]
    search: SearchArgs,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Leave time_s empty so that repeated runs give identical CSV.
    #[arg(long)]
    no_timing: bool,
    /// n = 100..1000 step 100 with 10,000 trials each (overrides --n and --trials).
    #[arg(long)]
    full_scale: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, BenchError> {
    match cli.command {
        Command::Run(args) => {
            let algorithm = AlgoSpec::parse_with_default(&args.algo, args.search.maxsize)
                .map_err(BenchError::Config)?;
            let report = run_single(&SingleRun {
                source: args.automaton.source(),
                algorithm,
                options: args.search.options(),
                maxlen: args.maxlen,
            })?;
            print!("{}", report.render(args.word));
            Ok(report.exit_code())
        }
        Command::Experiment(args) => {
            let algorithms = AlgoSpec::parse_list(&args.algos, args.search.maxsize)
                .map_err(BenchError::Config)?;
            let mut config = ExperimentConfig {
                ns: args.n,
                k: args.k,
                trials: args.trials,
                seed: args.seed,
                algorithms,
                options: args.search.options(),
                timing: !args.no_timing,
                threads: None,
            };
            if args.full_scale {
                config = config.full_scale();
            }
            let experiment = run_experiment(&config)?;
            match &args.out {
                Some(path) => {
                    let mut file = BufWriter::new(File::create(path)?);
                    experiment.write_csv(&mut file)?;
                    file.flush()?;
                    print!("{}", experiment.summary_text());
                }
                None => {
                    let stdout = io::stdout();
                    let mut lock = stdout.lock();
                    experiment.write_csv(&mut lock)?;
                    writeln!(lock)?;
                    write!(lock, "{}", experiment.summary_text())?;
                }
            }
            Ok(0)
        }
        Command::Generate(args) => {
            print!("{}", format::serialize(&args.source().load()?));
            Ok(0)
        }
    }
}
