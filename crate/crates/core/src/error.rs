use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop on vertex {vertex} (edge {edge})")]
    SelfLoop { edge: usize, vertex: usize },

    #[error("edge {edge} has invalid weight {weight}; weights must be finite and non-negative")]
    InvalidWeight { edge: usize, weight: f64 },

    #[error("graph needs at least one vertex")]
    Empty,

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("{0} is not an edge of the graph")]
    NotInGraph(String),

    #[error("not a spanning tree: {0}")]
    NotSpanning(String),

    #[error("edge index {index} out of range (m = {m})")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("path query needs two distinct vertices, got {0} twice")]
    SameVertex(usize),

    #[error("parallel edges between {u} and {v} are not allowed in the adjacency-matrix model")]
    ParallelEdges { u: usize, v: usize },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("iteration count undefined for zero marked items")]
    KZero,

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
