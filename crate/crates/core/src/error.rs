use std::io;

use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error")]
    Io(#[from] io::Error),

    #[error("malformed line {line}: {reason}")]
    Malformed { line: u64, reason: String },

    #[error("timestamp decreases at line {line}")]
    DecreasingTime { line: u64 },

    #[error("invalid stream cache: {0}")]
    BadCache(String),

    #[error("self-loop ({0}, {0}) cannot be stored as a link")]
    SelfLoop(u32),

    #[error("node index {index} out of range for graph with {n} nodes")]
    NodeOutOfRange { index: u32, n: u32 },

    #[error("target of {target} nodes exceeds the {final_n} nodes of the stream")]
    TargetBeyondStream { target: u64, final_n: u64 },

    #[error("statistic needs at least {needed} nodes, graph has {actual}")]
    TooFewNodes { needed: u64, actual: u64 },

    #[error("node {0} is not in the giant component")]
    NotInGiant(u32),

    #[error("power-law fit needs at least 2 distinct degrees, got {0}")]
    TooFewFitPoints(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("at checkpoint {index} (n = {n})")]
    AtCheckpoint {
        index: usize,
        n: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("serialization error")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
