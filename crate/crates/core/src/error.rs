use thiserror::Error;

/// Errors raised by graph construction, CI bookkeeping and the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("graph is not a DAG")]
    NotADag,

    #[error("graph contains a directed cycle")]
    DirectedCycle,

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("conditioning set of size {size} exceeds order bound k = {k}")]
    OrderExceeded { size: usize, k: usize },

    #[error("order k = {k} out of range for {n} vertices")]
    OrderOutOfRange { k: usize, n: usize },

    #[error("vertex count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("{n} vertices exceeds the enumeration limit of {limit}")]
    TooManyVertices { n: usize, limit: usize },

    #[error("operation requires k = 0, got k = {0}")]
    OrderNotZero(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Csv(#[from] CsvError),
}

/// Wraps `csv::Error` so that [`Error`] stays `Clone + PartialEq`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("csv: {0}")]
pub struct CsvError(pub String);

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(CsvError(e.to_string()))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
