use thiserror::Error;

use crate::cdc::Index;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("index {0} is not in the ground set")]
    IndexOutsideGround(Index),

    #[error("size guard tripped: {what} is {actual}, limit {limit}")]
    SizeGuard {
        what: &'static str,
        actual: u128,
        limit: u128,
    },

    #[error("the family does not admit a junction tree")]
    NoJunctionTree,

    #[error("family is not pairwise IB-representable")]
    NotPairwiseIb,

    #[error("not a spanning tree: {0}")]
    NotATree(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid biclique cover: {0}")]
    InvalidCover(String),

    #[error("invalid formulation: {0}")]
    InvalidFormulation(String),

    #[error("LP writer: {0}")]
    Lp(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("partition is not connected (dual graph has {components} components)")]
    DisconnectedPartition { components: usize },

    #[error("LP relaxation is unbounded")]
    Unbounded,

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn size_guard(what: &'static str, actual: u128, limit: u128) -> Self {
        Error::SizeGuard {
            what,
            actual,
            limit,
        }
    }
}
