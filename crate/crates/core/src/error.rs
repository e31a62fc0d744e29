use thiserror::Error;

use crate::vset::{VarRef, VertexSet};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("vertex out of range: {vertex} (n = {n})")]
    VertexOutOfRange { vertex: i64, n: usize },
    #[error("empty term")]
    EmptyTerm,
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("{0} is not an edge of the hypergraph")]
    NotAnEdge(VertexSet),
    #[error("{0} is not an artificial edge of the relaxation")]
    NotArtificial(VertexSet),
    #[error("invalid partition map: {0}")]
    InvalidPartition(String),
    #[error("vertices {0:?} do not appear in any multilinear term")]
    UncoveredVertices(Vec<u32>),
    #[error("no neighbors given")]
    EmptyNeighbors,
    #[error("neighbor {neighbor} is not adjacent to center {center}")]
    NotAdjacent { center: VertexSet, neighbor: VertexSet },
    #[error("flower condition |e0 ∩ ek| >= 2 fails for neighbor {0}")]
    SmallIntersection(VertexSet),
    #[error("flower condition fails: neighbors {0} and {1} meet inside the center")]
    OverlappingNeighbors(VertexSet, VertexSet),
    #[error("extended flower condition fails: neighbor {neighbor} has gamma = {gamma} < 2")]
    SmallPrivateIntersection { neighbor: VertexSet, gamma: usize },
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("incomplete point: no value for {0}")]
    IncompletePoint(VarRef),
    #[error("undeclared variable {0}")]
    UndeclaredVariable(VarRef),
    #[error("instance has no feasible binary point")]
    InfeasibleInstance,
    #[error("LP is infeasible")]
    Infeasible,
    #[error("simplex iteration limit ({0} pivots) reached")]
    IterationLimit(usize),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the numerical engine rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Infeasible | Error::IterationLimit(_))
    }
}
