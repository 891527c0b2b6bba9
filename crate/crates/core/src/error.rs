use thiserror::Error;

/// Errors produced by the decomposition engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("clique size {0} is not supported (expected 1..=4)")]
    UnsupportedCliqueSize(usize),

    #[error("unsupported (r,s) = ({r},{s}): need 1 <= r < s <= 4")]
    UnsupportedPair { r: usize, s: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("density is undefined for a set of {0} vertices (need at least 2)")]
    UndefinedDensity(usize),

    #[error("vertex set is not sorted, contains duplicates, or names a vertex >= {0}")]
    InvalidVertexSet(usize),

    #[error(
        "materializing the supergraph needs about {estimated} bytes, over the budget of \
         {budget} bytes; use the on-demand strategy instead"
    )]
    Capacity { estimated: u64, budget: u64 },

    #[error("kappa assignment was computed on a different graph or (r,s) pair")]
    Mismatch,

    #[error("no nucleus with id {0}")]
    UnknownNode(usize),

    #[error("oracle refuses graphs with {n} vertices (limit {limit})")]
    OracleTooLarge { n: usize, limit: usize },
}
