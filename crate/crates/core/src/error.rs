use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed vertex identifier {id:?} for family {family}")]
    Identifier { family: String, id: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("ball exceeds the vertex budget of {budget} vertices")]
    BudgetExceeded { budget: usize },

    #[error("automorphism search cap of {cap} exceeded after {found} results")]
    CapExceeded { cap: usize, found: usize },

    #[error("no anchor edge a-b with d(v,a)=2, d(v,b)=3 pins the root {root}")]
    AnchorNotFound { root: VertexId },

    #[error("no witness for pair {{{u}, {w}}} (pair #{index}) within radius {radius}")]
    WitnessExhausted { index: usize, u: VertexId, w: VertexId, radius: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("graph structure unsuitable: {0}")]
    Structure(String),

    #[error("invalid random schedule: {0}")]
    Schedule(String),

    #[error("radius {requested} is beyond the construction radius {available}")]
    BeyondRadius { requested: usize, available: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io { path: path.as_ref().display().to_string(), source }
    }
}
