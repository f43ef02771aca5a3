use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a local bisection: {0}")]
    NotLocalBisection(String),

    #[error("carrier is not closed under {operation}: {witness}")]
    NotClosed { operation: &'static str, witness: String },

    #[error("elements are not compatible: {0}")]
    Incompatible(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("prefix overlap between `{0}` and `{1}`")]
    PrefixOverlap(String, String),

    #[error("word length exceeds the depth cap of {cap} letters")]
    DepthCap { cap: usize },

    #[error("clopen sets are not isomorphic: {0}")]
    SizeObstruction(String),

    #[error("size bound exceeded: {0}")]
    SizeBound(String),

    /// Raised when two independent computations of the same quantity disagree.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
