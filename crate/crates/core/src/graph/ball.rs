use std::collections::{HashMap, HashSet};

use super::{vertex_budget, FiniteGraph, Graph, VertexId};
use crate::error::{Error, Result};

/// Layer-by-layer breadth-first search from a root.
///
/// Discovery order follows the oracle's neighbor order, which makes every
/// traversal reproducible.
pub struct Bfs<'g> {
    g: &'g dyn Graph,
    budget: usize,
    seen: HashSet<VertexId>,
    layer: Vec<VertexId>,
    depth: usize,
}

impl<'g> Bfs<'g> {
    pub fn new(g: &'g dyn Graph, root: &VertexId) -> Result<Self> {
        Self::with_budget(g, root, vertex_budget())
    }

    pub fn with_budget(g: &'g dyn Graph, root: &VertexId, budget: usize) -> Result<Self> {
        // validates the identifier
        g.neighbors(root)?;
        let mut seen = HashSet::new();
        seen.insert(root.clone());
        Ok(Bfs { g, budget, seen, layer: vec![root.clone()], depth: 0 })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The sphere at the current depth, in discovery order.
    pub fn layer(&self) -> &[VertexId] {
        &self.layer
    }

    pub fn visited(&self) -> usize {
        self.seen.len()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.seen.contains(v)
    }

    /// Advances one layer. An empty layer means the component is exhausted.
    pub fn advance(&mut self) -> Result<&[VertexId]> {
        let mut next = Vec::new();
        for v in &self.layer {
            for x in self.g.neighbors(v)? {
                if self.seen.insert(x.clone()) {
                    if self.seen.len() > self.budget {
                        return Err(Error::BudgetExceeded { budget: self.budget });
                    }
                    next.push(x);
                }
            }
        }
        self.layer = next;
        self.depth += 1;
        Ok(&self.layer)
    }
}

/// The materialized ball `B_root(radius)` together with its induced edges.
#[derive(Clone, Debug)]
pub struct BallView {
    pub root: VertexId,
    pub radius: usize,
    /// Vertices in BFS discovery order.
    pub vertices: Vec<VertexId>,
    pub dist: Vec<usize>,
    /// Induced adjacency over indices into `vertices`, in oracle order.
    pub adj: Vec<Vec<usize>>,
    /// Number of neighbors lying outside the ball (only nonzero on the last sphere).
    pub boundary_degree: Vec<usize>,
    index: HashMap<VertexId, usize>,
}

impl BallView {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index.contains_key(v)
    }

    pub fn distance_of(&self, v: &VertexId) -> Option<usize> {
        self.index_of(v).map(|i| self.dist[i])
    }

    /// Vertices of `S_root(r)` in discovery order.
    pub fn sphere(&self, r: usize) -> impl Iterator<Item = &VertexId> + '_ {
        self.vertices.iter().zip(&self.dist).filter(move |(_, &d)| d == r).map(|(v, _)| v)
    }

    pub fn sphere_indices(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.dist[i] == r)
    }

    /// `|S_root(i)|` for `i = 0..=radius`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.radius + 1];
        for &d in &self.dist {
            sizes[d] += 1;
        }
        sizes
    }

    /// Count of vertices at distance at most `r`.
    pub fn ball_size(&self, r: usize) -> usize {
        self.dist.iter().filter(|&&d| d <= r).count()
    }

    /// Largest distance actually attained; a lower bound on the eccentricity.
    pub fn eccentricity_lower_bound(&self) -> usize {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    /// Undirected edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
            .collect();
        e.sort_unstable();
        e
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn induced_graph(&self) -> FiniteGraph {
        FiniteGraph::from_edges(self.vertices.clone(), &self.edges())
    }

    /// The sub-ball of smaller radius, reusing this materialization.
    pub fn shrink(&self, r: usize) -> BallView {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.dist[i] <= r).collect();
        let mut remap = vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let vertices: Vec<VertexId> = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut adj = Vec::with_capacity(keep.len());
        let mut boundary = Vec::with_capacity(keep.len());
        for &old in &keep {
            let inside: Vec<usize> = self.adj[old]
                .iter()
                .filter(|&&j| remap[j] != usize::MAX)
                .map(|&j| remap[j])
                .collect();
            let outside = self.adj[old].len() - inside.len() + self.boundary_degree[old];
            adj.push(inside);
            boundary.push(outside);
        }
        BallView {
            root: self.root.clone(),
            radius: r.min(self.radius),
            vertices,
            dist: keep.iter().map(|&i| self.dist[i]).collect(),
            adj,
            boundary_degree: boundary,
            index,
        }
    }
}

/// Materializes `B_v(r)` under the process-wide vertex budget.
pub fn ball(g: &dyn Graph, v: &VertexId, r: usize) -> Result<BallView> {
    ball_within(g, v, r, vertex_budget())
}

pub fn ball_within(g: &dyn Graph, v: &VertexId, r: usize, budget: usize) -> Result<BallView> {
    let mut index: HashMap<VertexId, usize> = HashMap::new();
    let mut vertices = vec![v.clone()];
    let mut dist = vec![0usize];
    // full neighbor lists, for vertices strictly inside the ball
    let mut nbrs: Vec<Vec<VertexId>> = Vec::new();
    index.insert(v.clone(), 0);
    g.neighbors(v)?;

    let mut head = 0;
    while head < vertices.len() && dist[head] < r {
        let d = dist[head];
        let ns = g.neighbors(&vertices[head])?;
        for x in &ns {
            if !index.contains_key(x) {
                if vertices.len() >= budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                index.insert(x.clone(), vertices.len());
                vertices.push(x.clone());
                dist.push(d + 1);
            }
        }
        nbrs.push(ns);
        head += 1;
    }

    let mut adj = Vec::with_capacity(vertices.len());
    let mut boundary = Vec::with_capacity(vertices.len());
    for ns in &nbrs {
        adj.push(ns.iter().map(|x| index[x]).collect());
        boundary.push(0);
    }
    for x in &vertices[nbrs.len()..] {
        let (inside, outside) = g.neighbors_where(x, &|y| index.contains_key(y))?;
        adj.push(inside.iter().map(|y| index[y]).collect());
        boundary.push(outside);
    }
    Ok(BallView { root: v.clone(), radius: r, vertices, dist, adj, boundary_degree: boundary, index })
}

/// `S_v(r)` in discovery order.
pub fn sphere(g: &dyn Graph, v: &VertexId, r: usize) -> Result<Vec<VertexId>> {
    let mut bfs = Bfs::new(g, v)?;
    for _ in 0..r {
        if bfs.advance()?.is_empty() {
            return Ok(Vec::new());
        }
    }
    Ok(bfs.layer().to_vec())
}

/// Exact `d(u, w)` when it is at most `cap`, `None` otherwise.
///
/// Uses the family's closed form when available, else bidirectional BFS.
pub fn distance(g: &dyn Graph, u: &VertexId, w: &VertexId, cap: usize) -> Result<Option<usize>> {
    if let Some(d) = g.exact_distance(u, w) {
        let d = d?;
        return Ok((d <= cap).then_some(d));
    }
    bidirectional_distance(g, u, w, cap)
}

pub(crate) fn bidirectional_distance(
    g: &dyn Graph,
    u: &VertexId,
    w: &VertexId,
    cap: usize,
) -> Result<Option<usize>> {
    g.neighbors(u)?;
    g.neighbors(w)?;
    if u == w {
        return Ok(Some(0));
    }
    let budget = vertex_budget();
    let mut side = [HashMap::new(), HashMap::new()];
    side[0].insert(u.clone(), 0usize);
    side[1].insert(w.clone(), 0usize);
    let mut frontier = [vec![u.clone()], vec![w.clone()]];
    let mut depth = [0usize, 0usize];
    while depth[0] + depth[1] < cap {
        let s = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[s].is_empty() {
            return Ok(None);
        }
        let o = 1 - s;
        let mut next = Vec::new();
        let mut best: Option<usize> = None;
        for v in std::mem::take(&mut frontier[s]) {
            for x in g.neighbors(&v)? {
                if side[s].contains_key(&x) {
                    continue;
                }
                side[s].insert(x.clone(), depth[s] + 1);
                if side[s].len() > budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                if let Some(&dx) = side[o].get(&x) {
                    let cand = depth[s] + 1 + dx;
                    best = Some(best.map_or(cand, |b| b.min(cand)));
                }
                next.push(x);
            }
        }
        depth[s] += 1;
        frontier[s] = next;
        if let Some(b) = best {
            return Ok((b <= cap).then_some(b));
        }
    }
    Ok(None)
}
