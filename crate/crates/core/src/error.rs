use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input could not be decoded. The message carries line/field context.
    #[error("parse error: {0}")]
    Parse(String),

    /// Input decoded but violates the snapshot schema.
    #[error("schema error: {0}")]
    Schema(String),

    #[error("graph is empty")]
    EmptyGraph,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two inputs that must agree (labels vs graph, partition vs graph) do not.
    #[error("inconsistent input: {0}")]
    Consistency(String),

    /// Heuristic attributes required for scoring are absent.
    #[error("missing attributes: {}", .0.join(", "))]
    MissingAttributes(Vec<String>),

    #[error("sample of size {got} is too small (need at least {min})")]
    SampleSize { got: usize, min: usize },

    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error("L-moment ratios outside the attainable region: {0}")]
    Infeasible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
