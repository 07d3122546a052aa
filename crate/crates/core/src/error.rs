use thiserror::Error;

use crate::scheme::SchemeError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {op} on {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("entry count {got} does not match {rows}x{cols}")]
    BadLength { rows: usize, cols: usize, got: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("ragged block grid: {0}")]
    RaggedBlocks(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("adjacency matrix is not normal (AA^T != A^TA at ({0}, {1}))")]
    NotNormal(usize, usize),
    #[error("invalid adjacency matrix: {0}")]
    InvalidAdjacency(String),
    #[error("vertex {vertex} out of range for {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("digraph is not regular")]
    NotRegular,
    #[error("digraph has no arcs")]
    NoArcs,
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error("vertex set is not a coclique: arc {0} -> {1}")]
    NotCoclique(usize, usize),
    #[error("parts do not partition the vertex set: {0}")]
    NotPartition(String),
    #[error("{0} does not divide {1}")]
    NotDivisor(usize, usize),
    #[error("not a sign matrix: entry {value} at ({row}, {col})")]
    NotSignMatrix { row: usize, col: usize, value: i64 },
    #[error("not a Hadamard matrix")]
    NotHadamard,
    #[error("Hadamard matrix is not normalized")]
    NotNormalized,
    #[error("order {0} is not of the form 4n^2")]
    NotBlockOrder(usize),
    #[error("not a skew-Bush-type Hadamard matrix: {0}")]
    NotSkewBush(String),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid group-ring matrix: {0}")]
    InvalidGroupRing(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("root finding failed: {0}")]
    RootFinding(String),
}
