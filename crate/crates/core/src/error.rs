use alloc::string::String;

use crate::graph::VertexId;
use crate::tree::Violation;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid vertex label {0:?}")]
    InvalidLabel(String),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("both-direction arc pair {0} {1}")]
    BothDirections(VertexId, VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("{what} budget exceeded: {actual} > {limit}")]
    BudgetExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("invalid Burling tree: {0}")]
    InvalidTree(Violation),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid sequential decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a hole: {0}")]
    NotAHole(String),
}
