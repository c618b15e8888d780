use thiserror::Error;

use crate::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("invalid path decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("instance too large: {what} is {actual}, limit {limit}")]
    SizeLimit {
        what: &'static str,
        actual: u128,
        limit: u128,
    },
    #[error("search budget of {budget} nodes exceeded in {context}")]
    BudgetExceeded { context: &'static str, budget: u64 },
    #[error("path is not ascending in the path-partition")]
    NotAscending,
    #[error("path is not a directed path of the arborescence")]
    NotDirected,
    #[error("vertex {0} has no sublist")]
    UndefinedSublist(Vertex),
    #[error("subset rank {rank} out of range 1..={max}")]
    RankOutOfRange { rank: u64, max: u64 },
    #[error("subset is not an {ell}-subset of the universe")]
    SubsetNotInUniverse { ell: usize },
    #[error("illegal height difference {0} (must be at most 1)")]
    IllegalDifference(i64),
    #[error("inconsistent log: {0}")]
    InconsistentLog(String),
    #[error("solver invariant violated: {0}")]
    Invariant(String),
    #[error("sublist thinning failed at {stage} after {attempts} attempts")]
    ThinningFailed { stage: String, attempts: usize },
    #[error("choice set empty at vertex {0}")]
    EmptyChoice(Vertex),
}
