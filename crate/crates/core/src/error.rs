use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("self-loop at vertex {0}")]
    Loop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("graph is empty")]
    EmptyGraph,
    #[error("vertex {0} is isolated")]
    IsolatedVertex(VertexId),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid degree set: {0}")]
    InvalidDegreeSet(String),
    #[error("invalid formula: {0}")]
    InvalidFormula(String),
    #[error("formula has {0} variables, brute force is limited to {1}")]
    TooManyVariables(usize, usize),
    #[error("invalid dimension {0}")]
    InvalidDimension(usize),
    #[error("orientation constraints are only supported in two dimensions")]
    OrientationIn3d,
    #[error("orientation labels edge {0}-{1} which is not in the graph")]
    OrientationForeignEdge(VertexId, VertexId),
    #[error("edge {0}-{1} has no orientation label")]
    IncompleteOrientation(VertexId, VertexId),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("vertex {vertex} has degree {degree}, above the limit {limit}")]
    DegreeTooLarge {
        vertex: VertexId,
        degree: usize,
        limit: usize,
    },
    #[error("skeleton structure: {0}")]
    Skeleton(String),
    #[error("gadget: {0}")]
    Gadget(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
