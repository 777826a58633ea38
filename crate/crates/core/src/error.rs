use thiserror::Error;

use crate::model::NodeId;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("radius {0} must be positive and finite, got {1}")]
    BadRadius(&'static str, f64),
    #[error("sensor radius r={r} exceeds relay radius R={big_r}")]
    RadiusOrder { r: f64, big_r: f64 },
    #[error("delta must be at least 1")]
    ZeroDelta,
    #[error("instance has no sensors")]
    NoSensors,
    #[error("node {node} has a non-finite coordinate")]
    NonFinite { node: NodeId },
    #[error("node {node} duplicates coordinates ({x}, {y}) of an earlier node")]
    DuplicatePoint { node: NodeId, x: f64, y: f64 },
    #[error("edge ({u}, {v}) out of range for {nodes} nodes")]
    EdgeOutOfRange { u: NodeId, v: NodeId, nodes: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HopError {
    #[error("node {0} is not reachable from the tree root")]
    Unreachable(NodeId),
}

/// Failures inside the set-covering step. These indicate a broken
/// invariant, never a property of the input.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScaError {
    #[error("sensors {uncovered:?} cannot be covered at level {level}")]
    Uncoverable { level: u32, uncovered: Vec<NodeId> },
    #[error("level {level} exceeds the hop budget {delta}")]
    LevelOverflow { level: u32, delta: u32 },
    #[error("relay set handed to pruning is not feasible")]
    InfeasibleRelaySet,
}

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Sca(#[from] ScaError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error(
        "{m} candidate locations exceed the exhaustive-search guard of {guard}; pass an explicit subset-size limit"
    )]
    TooManyCandidates { m: usize, guard: usize },
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid experiment config: {0}")]
    Config(String),
    #[error("no trial records to summarize")]
    Empty,
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
}
