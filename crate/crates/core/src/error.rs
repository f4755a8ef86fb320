use std::io;

use thiserror::Error;

use crate::VertexId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no edges")]
    EmptyGraph,

    #[error("vertex {0} is not alive")]
    DeadVertex(VertexId),

    #[error("hop bound must be at least 1")]
    InvalidHop,

    #[error("sampling rate {0} is outside (0, 1]")]
    InvalidRate(f64),

    #[error("thread count must be at least 1")]
    InvalidThreads,

    #[error("neighborhood was built from a different traversal than the scratch it is used with")]
    StaleNeighborhood,

    #[error("{0} has no parallel driver")]
    Unsupported(String),

    #[error("results are not comparable: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
