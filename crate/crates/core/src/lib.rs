//! Minimum-weight spanning in-forests with a prescribed number of trees.
//!
//! For a weighted digraph, φ_k is the least total arc weight of a spanning
//! forest with exactly `k` trees, every vertex having at most one out-arc.
//! The forests attaining φ_k generate a set algebra per level; these algebras
//! are nested, and their atoms are the vertices of weighted condensations that
//! reproduce the profile of the original graph.
//!
//! Vertices are numbered `0..n` throughout the library.

pub mod condensation;
pub mod document;
pub mod enumerate;
pub mod error;
pub mod forest;
pub mod graph;
pub mod hierarchy;
pub mod report;
pub mod search;
pub mod vertex_set;
pub mod weight;

pub use error::{CondenseError, ForestError, GraphError, HierarchyError, SearchError};
pub use forest::{
    d_exchange, exchange_criterion, forest_weight, is_forest, rear_set, trees_of, ForestCheck,
    OutFunction, SpanningForest,
};
pub use graph::{Relabeling, WeightedDigraph, WeightedGraph};
pub use vertex_set::VertexSet;
pub use weight::{ParseWeightError, Rational, Weight};
