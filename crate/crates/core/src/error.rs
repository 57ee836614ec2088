use thiserror::Error;

use crate::stream::ElementId;

/// Problems found while validating or replaying an event stream.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StreamError {
    #[error("event {event}: duplicate edge ({u}, {v})")]
    DuplicateEdge { event: usize, u: usize, v: usize },
    #[error("event {event}: self-loop on vertex {vertex}")]
    SelfLoop { event: usize, vertex: usize },
    #[error("event {event}: neighbor {neighbor} has not been revealed")]
    UnknownNeighbor { event: usize, neighbor: usize },
    #[error("event {event}: expected vertex {expected}, got {got}")]
    OutOfOrderVertex { event: usize, expected: usize, got: usize },
    #[error("event {event}: {found} event in a {model} stream")]
    MixedModel {
        event: usize,
        model: &'static str,
        found: &'static str,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph with {vertices} vertices exceeds the exact-oracle cap of {cap}")]
    Scale { vertices: usize, cap: usize },
    #[error("yardstick `{yardstick}` does not support {problem}")]
    Unsupported {
        yardstick: &'static str,
        problem: &'static str,
    },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("target assignment is infeasible: {0}")]
    Infeasible(String),
    #[error("value {value} for {element} is outside {{0}} ∪ [w_min, w_max]")]
    ValueOutOfRange { element: ElementId, value: String },
    #[error("amortized recourse is undefined for an instance with no elements")]
    UndefinedMetric,
    #[error("potential monitor violated: {0}")]
    Monitor(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
