use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: ibfs_core::ParseError,
    },
    #[error(transparent)]
    Automaton(#[from] ibfs_core::AutomatonError),
    #[error(transparent)]
    Search(#[from] ibfs_core::SearchError),
}
