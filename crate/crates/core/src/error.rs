use alloc::string::String;

use crate::graph::MAX_ORDER;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),

    #[error("malformed graph6 string: {0}")]
    MalformedGraph6(String),

    #[error("vertex set is not contained in a graph of order {0}")]
    InvalidVertexSet(usize),

    #[error("matrix parameter t must be given exactly for the A+tD kind")]
    ParameterMismatch,

    #[error("graph has an isolated vertex ({0})")]
    IsolatedVertex(usize),

    #[error("zero vector")]
    ZeroVector,

    #[error("symmetric eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("not a swap piece: {0}")]
    InvalidPiece(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("certificate failed: {0}")]
    CertificateFailed(String),

    #[error("assembled graphs are not cospectral ({0})")]
    NotCospectral(String),

    #[error("eigenvalue data rejected: {0}")]
    InvalidEigenvalues(String),

    #[error("not a partition: {0}")]
    InvalidPartition(String),

    #[error("partition parameters out of range: n = {n}, k = {k}")]
    PartitionRange { n: usize, k: usize },

    #[error("base graph has a nontrivial automorphism")]
    SymmetricBase,

    #[error("malformed spectral key: {0}")]
    MalformedKey(String),

    #[error("census input: {0}")]
    CensusInput(String),
}
