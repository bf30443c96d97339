use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node id {id} out of range for graph with {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error("edge ({i}, {j}) has invalid weight {weight}")]
    InvalidWeight { i: usize, j: usize, weight: f64 },

    #[error("node set must be non-empty and proper (got {size} of {n} nodes)")]
    ImproperSet { size: usize, n: usize },

    #[error("graph is empty")]
    EmptyGraph,

    #[error("node {node} has zero degree; the unregularized Laplacian is undefined there")]
    ZeroDegree { node: usize },

    #[error("regularization parameter must be finite and nonnegative, got {0}")]
    InvalidTau(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid probability {value} for pair ({i}, {j})")]
    InvalidProbability { i: usize, j: usize, value: f64 },

    #[error("host component has {found} nodes, need at least {needed}")]
    HostTooSmall { needed: usize, found: usize },

    #[error("problem size {n} exceeds the limit of {limit} for {what}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("vector is not unit norm (norm = {0})")]
    NotUnitNorm(f64),

    #[error("{path}, line {line}: {message}", path = path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
