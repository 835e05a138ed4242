use thiserror::Error;

use crate::graph::{EdgeId, NodeId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph is not 2-edge-connected (bridge {0:?})")]
    NotTwoEdgeConnected(Option<EdgeId>),
    #[error("edge {0:?} has negative length")]
    NegativeLength(EdgeId),
    #[error("edge {0:?} is a self-loop")]
    SelfLoop(EdgeId),
    #[error("malformed instance: {0}")]
    MalformedInstance(String),
    #[error("no path between {0:?} and {1:?}")]
    Unreachable(NodeId, NodeId),
    #[error("node {0:?} is not on the path")]
    NodeNotOnPath(NodeId),
    #[error("no cycle through {0:?} and {1:?}")]
    NoCycle(NodeId, NodeId),
    #[error("cycle {cycle} intersects {parent} in more than one path")]
    MalformedIntersection { cycle: usize, parent: usize },
    #[error("cycles {0} and {1} are in ancestor relation")]
    AncestorRelation(usize, usize),
    #[error("crossing cycles {0} and {1} share no node off their ancestor")]
    NoCrossNode(usize, usize),
    #[error("no candidate path for the crossing of {0} and {1}")]
    EmptyCandidate(usize, usize),
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),
    #[error("edge {0:?} is directed but has no recorded setter")]
    LedgerMiss(EdgeId),
    #[error("cycle {0} has no containing brother")]
    MissingContainingBrother(usize),
    #[error("served nodes of cycle {0} are not on one directed run")]
    BrokenI(usize),
    #[error("bound violated: {0}")]
    BoundViolation(String),
    #[error("orientation is not strongly connected")]
    NotStronglyConnected,
    #[error("instance too large for exhaustive search ({0} > {1})")]
    TooLarge(usize, usize),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
