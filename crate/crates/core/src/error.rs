use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("vertex set is empty")]
    EmptyVertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("out-function has {got} entries, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("arc ({origin}, {terminus}) is not in the graph")]
    MissingArc { origin: usize, terminus: usize },
    #[error("vertex {vertex} points at itself")]
    Loop { vertex: usize },
    #[error("out-function contains a circuit through {circuit:?}")]
    Circuit { circuit: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("graph has {vertex_count} vertices, above the cap of {cap}")]
    CapExceeded { vertex_count: usize, cap: usize },
    #[error("tree count {k} outside 1..={vertex_count}")]
    LevelOutOfRange { k: usize, vertex_count: usize },
    #[error("no spanning forest with {k} trees exists")]
    PhiInfinite { k: usize },
    #[error("root {root} is not in the vertex set")]
    RootNotInSet { root: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HierarchyError {
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("extreme forests at level {k} exceed the enumeration cap")]
    IncompleteEnumeration { k: usize },
    #[error("vertex {vertex} is not marked at level {k}")]
    NotMarked { k: usize, vertex: usize },
    #[error("level {k} is not a strict level of the convexity chain")]
    NotStrictLevel { k: usize },
    #[error("algebra of level {k} is not refined by the algebra of level {}", k + 1)]
    NestingViolated { k: usize },
    #[error("no extreme forest at level {k} has a tree rooted at {vertex} spanning its attraction domain")]
    DomainNotRealized { k: usize, vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CondenseError {
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
    #[error("level {k} cannot be condensed: {reason}")]
    LevelNotCondensable { k: usize, reason: String },
    #[error("condensed vertex {vertex} has no spanning in-tree, so it cannot be a root")]
    MissingSetWeight { vertex: usize },
    #[error("condensed forest uses absent arc ({origin}, {terminus})")]
    MissingArc { origin: usize, terminus: usize },
    #[error("forest has {got} entries, condensation has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("condensation has {vertex_count} vertices, above the cap of {cap}")]
    CapExceeded { vertex_count: usize, cap: usize },
}

impl From<SearchError> for CondenseError {
    fn from(e: SearchError) -> Self {
        CondenseError::Hierarchy(HierarchyError::Search(e))
    }
}
