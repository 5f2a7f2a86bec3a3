use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// What went wrong while building or parsing a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HypergraphErrorKind {
    Malformed(String),
    VertexCount(String),
    VertexOutOfRange { vertex: usize, n: usize },
    RepeatedVertex(usize),
    DuplicateEdge,
    EmptyEdge,
}

impl fmt::Display for HypergraphErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Malformed(msg) => write!(f, "malformed line: {msg}"),
            Self::VertexCount(msg) => write!(f, "invalid vertex count: {msg}"),
            Self::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for n = {n}")
            }
            Self::RepeatedVertex(v) => write!(f, "vertex {v} repeated within one edge"),
            Self::DuplicateEdge => f.write_str("duplicate edge"),
            Self::EmptyEdge => f.write_str("empty edge"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{}", hypergraph_msg(*.line, .kind))]
    Hypergraph {
        line: Option<usize>,
        kind: HypergraphErrorKind,
    },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite within tolerance")]
    NotPositive,

    #[error("expectation value has non-negligible imaginary part {0:e}")]
    ComplexExpectation(f64),

    #[error("Kraus set is not complete (max deviation {0:e})")]
    IncompleteKraus(f64),

    #[error("qubit site {site} out of range for {n} qubits")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("missing parameter {0}")]
    MissingParameter(&'static str),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

fn hypergraph_msg(line: Option<usize>, kind: &HypergraphErrorKind) -> String {
    match line {
        Some(l) => alloc::format!("line {l}: {kind}"),
        None => alloc::format!("{kind}"),
    }
}
