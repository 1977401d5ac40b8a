use thiserror::Error;

use crate::dyadic::Dyadic;
use crate::mesh::Direction;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a dyadic rational: {0:?}")]
    NonDyadic(String),

    #[error("domain must be a square [a,b]x[a,b] with a < b")]
    NonSquareDomain,

    #[error("coordinate {0} is not strictly inside the domain")]
    OutsideDomain(Dyadic),

    #[error("interior coordinates must be strictly increasing (got {0} twice or out of order)")]
    DuplicateCoordinate(Dyadic),

    #[error("invalid meshline: {0}")]
    InvalidLine(String),

    #[error("{direction:?} segment at {fixed} has a dangling endpoint at {at}")]
    DanglingEndpoint { direction: Direction, fixed: Dyadic, at: Dyadic },

    #[error("segment has zero length")]
    ZeroLength,

    #[error("segment lies on the domain boundary")]
    OnBoundary,

    #[error("segment is already part of the mesh")]
    NoChange,

    #[error("segment overlaps a collinear line of different multiplicity")]
    MultiplicityConflict,

    #[error("mesh is not a tensor mesh")]
    NotTensor,

    #[error("box {0} is not produced by dyadic halving (aspect 1:1 or 2:1)")]
    NotEgForm(String),

    #[error("knot {0} is outside the open support")]
    KnotOutsideSupport(Dyadic),

    #[error("knot {0} would exceed multiplicity degree+1")]
    MultiplicityOverflow(Dyadic),

    #[error("malformed B-spline: {0}")]
    InvalidBSpline(String),

    #[error("new mesh does not refine the old one")]
    NotARefinement,

    #[error("refinement region is empty")]
    EmptyRegion,

    #[error("region box {0} is not a box of the current mesh")]
    StaleRegion(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("mesh and B-spline set do not match: {0}")]
    Mismatch(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("refinement made no progress")]
    NoProgress,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
