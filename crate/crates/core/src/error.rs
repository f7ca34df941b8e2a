use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex sequence has length {0}; a cycle needs at least 3 vertices")]
    CycleTooShort(usize),
    #[error("vertex {0} appears more than once in the sequence")]
    RepeatedVertex(u8),
    #[error("vertex {vertex} is outside [1, {n}]")]
    VertexOutOfRange { vertex: u8, n: usize },
    #[error("cycle length {k} is outside [3, {n}]")]
    LengthOutOfRange { n: usize, k: usize },
    #[error("n = {n} exceeds the supported maximum of {max} for {what}")]
    SizeGuard { what: &'static str, n: usize, max: usize },
    #[error("the two cycles are identical")]
    SameCycle,
    #[error("cycles are not adjacent in the overlap graph")]
    NotAdjacent,
    #[error("pivot requested for an empty set")]
    EmptySet,
    #[error("bias set is not a biased clique")]
    NotBiasedClique,
    #[error("balanced cycle {0} uses an edge outside the graph")]
    CycleOutsideGraph(u32),
    #[error("edge {0} carries no label")]
    UnlabelledEdge(usize),
    #[error("polynomial variable {0} has no value at the evaluation point")]
    MissingVariable(usize),
    #[error("{what} needs {needed} items, above the cap of {cap}")]
    CapExceeded { what: &'static str, needed: u128, cap: u128 },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cache format error: {0}")]
    CacheFormat(String),
    #[error("cache checksum mismatch (stored {stored:#018x}, computed {computed:#018x})")]
    CacheChecksum { stored: u64, computed: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
