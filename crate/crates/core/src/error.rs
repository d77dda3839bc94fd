use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("edge ({u}, {v}) has negative length {w}")]
    NegativeWeight { u: usize, v: usize, w: f64 },
    #[error("edge ({u}, {v}) has non-finite length")]
    NonFiniteWeight { u: usize, v: usize },
    #[error("graph is disconnected: vertex {vertex} is unreachable from vertex 0")]
    DisconnectedGraph { vertex: usize },
    #[error("vertex set is empty")]
    EmptySet,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("epsilon must be a finite positive number, got {0}")]
    InvalidEpsilon(f64),
    #[error("kappa must satisfy 0 < kappa < n (kappa = {kappa}, n = {n})")]
    InvalidKappa { kappa: usize, n: usize },
    #[error("malformed LP model: {0}")]
    MalformedModel(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("invalid fractional solution: {0}")]
    InvalidFractional(String),
    #[error("set cover element {element} is contained in no set")]
    UncoverableElement { element: usize },
    #[error("instance too large: {required} candidates exceed the cap of {cap}")]
    InstanceTooLarge { required: u128, cap: u128 },
}
