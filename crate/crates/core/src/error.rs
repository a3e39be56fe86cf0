use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An element or set does not have the shape the group context expects.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no compatible total order on this group: {0}")]
    UnsupportedOrder(String),

    #[error("torsion collision: {0}")]
    TorsionCollision(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("invalid basis system: {0}")]
    InvalidBasisSystem(String),

    #[error("loop detected: ground element {0} lies in no basis")]
    Loop(usize),

    #[error("ground sets are not disjoint: {0}")]
    Disjointness(String),

    /// The ground set is too large for the rectification bound of the group.
    #[error("order unavailable: {0}")]
    OrderUnavailable(String),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("ground mismatch: {0}")]
    GroundMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("arithmetic overflow")]
    Overflow,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown campaign '{0}'")]
    UnknownCampaign(String),
}

pub type Result<T> = std::result::Result<T, Error>;
