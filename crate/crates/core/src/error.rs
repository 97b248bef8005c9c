use thiserror::Error;

/// Errors raised by graph construction, parsing and the counting engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid edge ({u}, {v}): edges must satisfy 1 <= u < v <= {n}")]
    InvalidEdge { u: usize, v: usize, n: usize },

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("({i}, {j}, {k}) is not a reducible pair in this graph")]
    InvalidPair { i: usize, j: usize, k: usize },

    #[error("edge ({u}, {v}) has multiplicity {multiplicity}; only edges out of vertex 1 may repeat")]
    MultiplicityViolation { u: usize, v: usize, multiplicity: u32 },

    #[error("resource limit exceeded: {what} after {visited} nodes (cap {cap})")]
    ResourceLimit { what: &'static str, visited: u64, cap: u64 },

    #[error("array violates its constraint system: {0}")]
    ConstraintViolation(String),

    #[error("constant term unstable: bound {bound} gives {at_bound}, bound {next} gives {at_next}")]
    TruncationUnstable { bound: u32, at_bound: String, next: u32, at_next: String },

    #[error("product is not an integer: {0}")]
    NonIntegral(String),

    #[error("malformed tree: {0}")]
    MalformedTree(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
