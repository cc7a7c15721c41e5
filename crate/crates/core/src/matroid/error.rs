use thiserror::Error;

use super::subset::{format, Subset};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MatroidError {
    #[error("a matroid needs at least one basis")]
    EmptyBasisList,
    #[error("bases {} and {} have different sizes", format(*.first), format(*.second))]
    EqualCardinalityViolation { first: Subset, second: Subset },
    #[error(
        "basis exchange fails: removing {element} from {} admits no replacement from {}",
        format(*.first),
        format(*.second)
    )]
    ExchangeViolation {
        first: Subset,
        second: Subset,
        element: usize,
    },
    #[error("ground set of size {0} exceeds the supported maximum of 24")]
    GroundSetTooLarge(usize),
    #[error("set {} is not contained in a ground set of size {n}", format(*.set))]
    ElementOutOfRange { set: Subset, n: usize },
    #[error("rank {rank} exceeds ground set size {n}")]
    RankExceedsSize { rank: usize, n: usize },
    #[error("edge {edge} uses vertex {vertex}, but the graph has {vertices} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        vertices: usize,
    },
    #[error("{} is not a subset of {}", format(*.inner), format(*.outer))]
    NotNested { inner: Subset, outer: Subset },
    #[error("connectivity is undefined on the empty ground set")]
    EmptyGroundSet,
    #[error("{} is not a basis", format(*.0))]
    NotABasis(Subset),
}
