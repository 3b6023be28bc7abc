use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(u32),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(u32),
    #[error("edge {edge} references unknown vertex {vertex}")]
    UnknownEndpoint { edge: u32, vertex: u32 },
    #[error("edge {0} is a self-loop")]
    SelfLoop(u32),
    #[error("rotation of vertex {vertex} is invalid: {reason}")]
    Rotation { vertex: u32, reason: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("rotation system is not planar: |V| - |E| + |F| = {euler}, expected 2")]
    NonPlanar { euler: i64 },
    #[error("graph reduces to a single vertex of weight {weight}")]
    TrivialInstance { weight: u64 },
    #[error("invalid problem: {0}")]
    InvalidSpec(String),
    #[error("instance is infeasible: {0}")]
    Infeasible(String),
    #[error("instance too large for {what}: {size} > {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("invalid decomposition: {0}")]
    Decomposition(String),
    #[error("cluster {cluster} has no certified cyclic order, required by noncrossing mode")]
    MissingTheta { cluster: usize },
    #[error("rank {rank} out of range 1..={total}")]
    RankOutOfRange { rank: String, total: String },
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("gadget invariant violated: {0}")]
    Gadget(String),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
