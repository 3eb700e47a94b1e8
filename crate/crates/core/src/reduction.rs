//! Deleting the closed neighborhood of an induced matching, `G - N[A]`.
//! When the result is nonempty without isolated vertices it stays WTD, and
//! the total domination number drops by twice the number of matching edges.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::{EdgeSet, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("vertex {0} is isolated in the host graph")]
    IsolatedVertex(usize),
    #[error("selection is empty")]
    EmptySelection,
    #[error("{0}-{1} is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("selected edges share vertex {0}")]
    SharedVertex(usize),
    #[error("cross edge {0}-{1} joins two selected edges; the selection must induce disjoint K2s")]
    CrossEdge(usize, usize),
}

/// Pairwise disjoint edges `u_i v_i` whose endpoints induce `m` disjoint
/// copies of `K2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingSelection {
    pub edges: EdgeSet,
}

impl MatchingSelection {
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        MatchingSelection {
            edges: edges.into_iter().collect(),
        }
    }

    pub fn endpoints(&self) -> VertexSet {
        self.edges.vertices()
    }

    /// Checks the selection against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), ReductionError> {
        if self.edges.is_empty() {
            return Err(ReductionError::EmptySelection);
        }
        let mut used = VertexSet::EMPTY;
        for (u, v) in self.edges.iter() {
            if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
                return Err(ReductionError::NotAnEdge(u, v));
            }
            for x in [u, v] {
                if used.contains(x) {
                    return Err(ReductionError::SharedVertex(x));
                }
                used.insert(x);
            }
        }
        for (u, v) in g.edges() {
            if used.contains(u) && used.contains(v) && !self.edges.contains(u, v) {
                return Err(ReductionError::CrossEdge(u, v));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionStatus {
    /// Nonempty and isolate-free: the WTD conclusion applies.
    Ok,
    /// Some vertex lost all its neighbors.
    HasIsolated,
    /// `N[A]` is everything.
    Empty,
}

impl fmt::Display for ReductionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionStatus::Ok => "ok",
            ReductionStatus::HasIsolated => "has_isolated",
            ReductionStatus::Empty => "empty",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: Graph,
    /// Host vertex behind each vertex of `graph`.
    pub vertex_map: Vec<usize>,
    pub status: ReductionStatus,
}

pub fn reduce_by_matching(g: &Graph, sel: &MatchingSelection) -> Result<Reduction, ReductionError> {
    if let Some(v) = g.isolated_vertices().first() {
        return Err(ReductionError::IsolatedVertex(v));
    }
    sel.validate(g)?;
    let (graph, vertex_map) = g.delete_closed_neighborhood(sel.endpoints());
    let status = if graph.n() == 0 {
        ReductionStatus::Empty
    } else if !graph.isolated_vertices().is_empty() {
        ReductionStatus::HasIsolated
    } else {
        ReductionStatus::Ok
    };
    Ok(Reduction {
        graph,
        vertex_map,
        status,
    })
}
