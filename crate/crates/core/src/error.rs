use thiserror::Error;

use crate::temporal_graph::{TemporalEdge, Time, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("time step {t} outside 1..={lifespan}")]
    TimeOutOfRange { t: Time, lifespan: Time },

    #[error("vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { v: VertexId, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),

    #[error("time steps start at 1")]
    ZeroTime,

    #[error("duplicate temporal edge {0}")]
    DuplicateEdge(TemporalEdge),

    #[error("invalid candidate {edge}: {reason}")]
    InvalidCandidate {
        edge: TemporalEdge,
        reason: &'static str,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("index {index} out of range for length {len}")]
    Index { index: usize, len: usize },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
