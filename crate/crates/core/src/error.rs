use thiserror::Error;

/// Errors produced across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("edge {edge} has {found} distinct vertices, expected {expected}")]
    EdgeSizeMismatch { edge: usize, expected: usize, found: usize },

    #[error("edge {edge} references vertex {vertex}, but the hypergraph has {vertex_count} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("coloring covers {found} vertices, hypergraph has {expected}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("conversion requires b = a - 1, got a = {a}, b = {b}")]
    NotAMinusOne { a: u32, b: u32 },

    #[error("color set already holds all {palette} colors")]
    FullPalette { palette: u32 },

    #[error("enumeration needs {required} steps, budget is {budget}")]
    BudgetExceeded { required: String, budget: String },

    #[error("{a} does not divide b*v = {bv}")]
    Divisibility { a: u64, bv: u64 },

    #[error("no proper coloring found with a <= {a_max}")]
    NotFound { a_max: u32 },

    #[error("gave up after {attempts} attempts")]
    AttemptsExhausted { attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}
