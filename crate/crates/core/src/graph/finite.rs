use std::collections::HashMap;

use super::VertexId;

/// A finite simple undirected graph over dense indices `0..n`.
#[derive(Clone, Debug)]
pub struct FiniteGraph {
    ids: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl FiniteGraph {
    /// Builds from explicit ids and an edge list. Loops are dropped and
    /// duplicate edges merged.
    pub fn from_edges(ids: Vec<VertexId>, edges: &[(usize, usize)]) -> Self {
        let n = ids.len();
        let mut adj = vec![Vec::new(); n];
        let mut norm: Vec<(usize, usize)> = edges
            .iter()
            .filter(|(a, b)| a != b)
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        norm.sort_unstable();
        norm.dedup();
        for &(a, b) in &norm {
            assert!(b < n, "edge endpoint {b} out of range for {n} vertices");
            adj[a].push(b);
            adj[b].push(a);
        }
        for ns in &mut adj {
            ns.sort_unstable();
        }
        let index = ids.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        FiniteGraph { ids, index, adj, edges: norm }
    }

    /// Vertices named `"0"`, `"1"`, ...
    pub fn with_numbered_vertices(n: usize, edges: &[(usize, usize)]) -> Self {
        let ids = (0..n).map(|i| VertexId::from(i.to_string())).collect();
        Self::from_edges(ids, edges)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &VertexId {
        &self.ids[i]
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// BFS distances from `src`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        let mut queue = std::collections::VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            for &x in &self.adj[v] {
                if dist[x] == usize::MAX {
                    dist[x] = dist[v] + 1;
                    queue.push_back(x);
                }
            }
        }
        dist
    }
}
