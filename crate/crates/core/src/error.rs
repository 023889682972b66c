use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("ground sets differ: {0} vs {1}")]
    GroundSetMismatch(usize, usize),

    #[error("label sets differ")]
    LabelSetMismatch,

    #[error("sign of an m-cycle conjugator is only defined for odd m (got m = {0})")]
    EvenVertexCount(usize),

    #[error("invalid cycle {0:?}")]
    InvalidCycle(Vec<usize>),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("edge index {index} out of range ({len} edges)")]
    EdgeIndex { index: usize, len: usize },

    #[error("not a tree")]
    NotATree,

    #[error("pivot {pivot} outside 1..={m}")]
    InvalidPivot { pivot: usize, m: usize },

    #[error("Pfaffian needs an even-sized matrix (got {0})")]
    OddPfaffian(usize),

    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),

    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("column {0} does not sum to zero")]
    NonzeroRowSum(usize),

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("no value assigned to generator {0}")]
    MissingAssignment(String),

    #[error("slot assignment: {0}")]
    SlotAssignment(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
