//! Total domination analysis for small graphs.
//!
//! The crate enumerates minimal total dominating sets through minimal
//! transversals of the open-neighborhood hypergraph, decides whether a graph
//! is well-totally-dominated (all minimal total dominating sets share one
//! size), builds and decomposes the `W2` family of WTD(2) graphs, and runs
//! exhaustive atlases of small graphs against known structural bounds.

pub mod bitset;
pub mod canon;
pub mod cli;
pub mod domination;
pub mod format;
pub mod graph;
pub mod hypergraph;
pub mod planarity;
pub mod reduction;
pub mod search;
pub mod wtd2;

pub use bitset::{VertexSet, MAX_VERTICES};
pub use graph::{EdgeSet, Graph, GraphError};
