use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not a tree: {0}")]
    NotATree(String),

    #[error("vertex {vertex} out of range for a graph with {n_vertices} vertices")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },

    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),

    #[error("vertices {0} and {1} are in different components")]
    Unreachable(usize, usize),

    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration over {n} vertices exceeds the cap of {cap} (pass the override to allow 13)")]
    EnumerationCap { n: usize, cap: usize },

    #[error("rejection sampler exhausted after {0} draws; use the MCMC sampler instead")]
    Exhausted(u64),

    #[error("statistic {statistic} is undefined under the condition of {peaks} peak(s)")]
    UndefinedStatistic { statistic: String, peaks: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
