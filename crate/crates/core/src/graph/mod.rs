//! Vertex identity, lazy neighbor oracles and BFS over locally finite graphs.

mod ball;
mod finite;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use ball::{ball, ball_within, distance, sphere, BallView, Bfs};
pub use finite::FiniteGraph;

/// Default cap on the number of vertices a single BFS may materialize.
pub const DEFAULT_VERTEX_BUDGET: usize = 2_000_000;

static VERTEX_BUDGET: AtomicUsize = AtomicUsize::new(DEFAULT_VERTEX_BUDGET);

/// Process-wide vertex budget used by [`ball`] and friends.
pub fn vertex_budget() -> usize {
    VERTEX_BUDGET.load(Ordering::Relaxed)
}

pub fn set_vertex_budget(budget: usize) {
    VERTEX_BUDGET.store(budget.max(1), Ordering::Relaxed);
}

/// Canonical vertex token. Equality and order are those of the textual
/// encoding, so two ids compare exactly as their strings do.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(Arc<str>);

impl VertexId {
    pub fn new(s: impl AsRef<str>) -> Self {
        VertexId(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId::new(s)
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(Arc::from(s))
    }
}

/// A locally finite, simple, undirected graph given by a neighbor oracle.
///
/// Implementations must be deterministic and symmetric, and must never
/// report self-loops or repeated neighbors.
pub trait Graph: Send + Sync {
    fn family(&self) -> String;

    /// Fails with an identifier error when `v` does not belong to the family.
    fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>>;

    /// Neighbors of `v` accepted by `keep`, and the number rejected.
    /// Families with enormous degrees override this to avoid collecting
    /// neighbor lists that are mostly discarded.
    fn neighbors_where(&self, v: &VertexId, keep: &dyn Fn(&VertexId) -> bool) -> Result<(Vec<VertexId>, usize)> {
        let all = self.neighbors(v)?;
        let total = all.len();
        let kept: Vec<VertexId> = all.into_iter().filter(|x| keep(x)).collect();
        let rest = total - kept.len();
        Ok((kept, rest))
    }

    fn default_root(&self) -> Option<VertexId> {
        None
    }

    /// Closed-form graph distance, for families that have one.
    fn exact_distance(&self, _u: &VertexId, _w: &VertexId) -> Option<Result<usize>> {
        None
    }

    /// `Some(d)` when the graph is the d-regular tree.
    fn regular_tree_degree(&self) -> Option<usize> {
        None
    }

    /// True when the graph is known to be acyclic and connected.
    fn is_tree(&self) -> bool {
        self.regular_tree_degree().is_some()
    }
}

pub type GraphHandle = Arc<dyn Graph>;

pub fn degree(g: &dyn Graph, v: &VertexId) -> Result<usize> {
    Ok(g.neighbors(v)?.len())
}
