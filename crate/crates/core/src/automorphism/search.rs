//! Backtracking automorphism search with colour refinement.
//!
//! Two ordered partitions are carried side by side: the left one follows a
//! fixed individualization path, the right one branches over every vertex
//! of the matching cell. Refinement is isomorphism invariant, so any
//! automorphism survives along its own branch; discrete leaves are
//! certified before they are reported.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;

use super::Permutation;

/// Default cap on the number of group elements produced by one search.
pub const DEFAULT_SEARCH_CAP: usize = 100_000;

static SEARCH_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_SEARCH_CAP);

/// Process-wide group-size cap used where no explicit cap is passed.
pub fn search_cap() -> usize {
    SEARCH_CAP.load(Ordering::Relaxed)
}

pub fn set_search_cap(cap: usize) {
    SEARCH_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// Default cap on search-tree nodes.
pub const DEFAULT_NODE_LIMIT: usize = 2_000_000;

/// Constraints on the automorphisms sought, over a graph's index set.
#[derive(Clone, Debug, Default)]
pub struct SearchConstraints {
    /// Vertices each mapped to itself.
    pub fixed: Vec<usize>,
    /// Vertex sets each mapped onto itself (e.g. a color class).
    pub setwise: Vec<Vec<usize>>,
    /// A center that must be fixed; distances from it join the initial invariant.
    pub center: Option<usize>,
}

impl SearchConstraints {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn fixing_center(center: usize) -> Self {
        SearchConstraints { center: Some(center), ..Self::default() }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let all = self.fixed.iter().chain(self.setwise.iter().flatten()).chain(self.center.iter());
        for &i in all {
            if i >= n {
                return Err(Error::arg(format!("constraint vertex {i} outside domain of size {n}")));
            }
        }
        Ok(())
    }

    /// Whether `p` respects every constraint.
    pub fn admits(&self, p: &Permutation) -> bool {
        self.fixed.iter().all(|&i| p.fixes(i))
            && self.center.is_none_or(|c| p.fixes(c))
            && self.setwise.iter().all(|set| {
                let mut inside = vec![false; p.len()];
                for &i in set {
                    inside[i] = true;
                }
                set.iter().all(|&i| inside[p.apply(i)])
            })
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub automorphisms: Vec<Permutation>,
    /// Set iff the list is the entire constrained automorphism set.
    pub exhaustive: bool,
}

/// An ordered partition stored nauty-style: `lab` lists the vertices with
/// every cell contiguous, and a cell is named by its first position.
#[derive(Clone)]
struct State {
    lab: Vec<u32>,
    pos: Vec<u32>,
    cell_of: Vec<u32>,
    /// Cell length, valid at cell starts.
    len: Vec<u32>,
    classes: u32,
    trace: u64,
}

impl State {
    fn discrete(&self) -> bool {
        self.classes as usize == self.lab.len()
    }

    fn cell(&self, c: u32) -> &[u32] {
        &self.lab[c as usize..(c + self.len[c as usize]) as usize]
    }

    fn compatible(&self, other: &State) -> bool {
        self.classes == other.classes && self.trace == other.trace
    }
}

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

/// Exact search engine over one finite graph and one constraint set.
pub struct Engine<'a> {
    f: &'a FiniteGraph,
    constraints: SearchConstraints,
    root: State,
    node_limit: usize,
}

enum Flow {
    Continue,
    Stop,
}

impl<'a> Engine<'a> {
    pub fn new(f: &'a FiniteGraph, constraints: SearchConstraints) -> Result<Self> {
        constraints.validate(f.len())?;
        let n = f.len();
        let mut membership: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (k, set) in constraints.setwise.iter().enumerate() {
            for &i in set {
                membership[i].push(k as u32);
            }
        }
        let mut fixed_pos = vec![u32::MAX; n];
        for (k, &i) in constraints.fixed.iter().enumerate() {
            if fixed_pos[i] == u32::MAX {
                fixed_pos[i] = k as u32;
            }
        }
        let center_dist = match constraints.center {
            Some(c) => f.distances_from(c),
            None => vec![0; n],
        };
        let keys: Vec<u64> = (0..n)
            .map(|i| hash_of(&(&membership[i], fixed_pos[i], center_dist[i], constraints.center == Some(i))))
            .collect();

        // initial cells in key order
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_by_key(|&v| keys[v as usize]);
        let mut pos = vec![0u32; n];
        let mut cell_of = vec![0u32; n];
        let mut len = vec![0u32; n];
        let mut starts = Vec::new();
        let mut shape = Vec::new();
        let mut i = 0;
        while i < n {
            let mut j = i;
            while j < n && keys[lab[j] as usize] == keys[lab[i] as usize] {
                j += 1;
            }
            for (k, &v) in lab[i..j].iter().enumerate() {
                pos[v as usize] = (i + k) as u32;
                cell_of[v as usize] = i as u32;
            }
            len[i] = (j - i) as u32;
            starts.push(i as u32);
            shape.push((keys[lab[i] as usize], j - i));
            i = j;
        }
        let mut root = State { lab, pos, cell_of, len, classes: starts.len() as u32, trace: hash_of(&shape) };
        let mut engine = Engine { f, constraints, root: root.clone(), node_limit: DEFAULT_NODE_LIMIT };
        engine.refine(&mut root, starts);
        engine.root = root;
        Ok(engine)
    }

    pub fn with_node_limit(mut self, limit: usize) -> Self {
        self.node_limit = limit;
        self
    }

    /// Whether refinement alone already isolates vertex `i`; such a vertex
    /// is fixed by every constrained automorphism.
    pub fn is_singleton(&self, i: usize) -> bool {
        self.root.len[self.root.cell_of[i] as usize] == 1
    }

    /// Vertices that refinement cannot separate from `i`.
    pub fn cell_of(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.root.cell(self.root.cell_of[i]).iter().map(|&v| v as usize).collect();
        out.sort_unstable();
        out
    }

    /// Splitter-queue refinement to the coarsest equitable partition below
    /// `s`. Every choice depends only on cell positions and counts, so the
    /// result and its trace are invariant under relabelling.
    fn refine(&self, s: &mut State, initial: Vec<u32>) {
        let n = s.lab.len();
        let mut queued = vec![false; n];
        let mut queue = std::collections::VecDeque::with_capacity(initial.len());
        for c in initial {
            queued[c as usize] = true;
            queue.push_back(c);
        }
        let mut count = vec![0u32; n];
        let mut touched: Vec<u32> = Vec::new();
        let mut by_cell: Vec<(u32, u32)> = Vec::new();
        let mut groups: Vec<(u32, usize, usize)> = Vec::new();
        while let Some(sp) = queue.pop_front() {
            queued[sp as usize] = false;
            let splitter: Vec<u32> = s.cell(sp).to_vec();
            for &x in &splitter {
                for &y in self.f.neighbors(x as usize) {
                    if count[y] == 0 {
                        touched.push(y as u32);
                    }
                    count[y] += 1;
                }
            }
            by_cell.clear();
            by_cell.extend(touched.iter().map(|&y| (s.cell_of[y as usize], y)));
            by_cell.sort_unstable();
            let mut i = 0;
            while i < by_cell.len() {
                let c = by_cell[i].0;
                let mut j = i;
                while j < by_cell.len() && by_cell[j].0 == c {
                    j += 1;
                }
                let hit = &by_cell[i..j];
                i = j;
                let (start, l, k) = (c as usize, s.len[c as usize] as usize, hit.len());
                if l == 1 {
                    continue;
                }
                let first = count[hit[0].1 as usize];
                if k == l && hit.iter().all(|&(_, v)| count[v as usize] == first) {
                    continue;
                }
                // touched members go to the tail of the cell, sorted by count
                let mut tail = start + l;
                for &(_, y) in hit {
                    tail -= 1;
                    let (py, other) = (s.pos[y as usize] as usize, s.lab[tail]);
                    s.lab.swap(py, tail);
                    s.pos[other as usize] = py as u32;
                    s.pos[y as usize] = tail as u32;
                }
                s.lab[tail..start + l].sort_unstable_by_key(|&v| (count[v as usize], v));
                groups.clear();
                if tail > start {
                    groups.push((0, start, tail - start));
                }
                let mut p = tail;
                while p < start + l {
                    let key = count[s.lab[p] as usize];
                    let mut e = p;
                    while e < start + l && count[s.lab[e] as usize] == key {
                        e += 1;
                    }
                    groups.push((key, p, e - p));
                    p = e;
                }
                s.trace = hash_of(&(s.trace, c, groups.iter().map(|&(key, _, size)| (key, size)).collect::<Vec<_>>()));
                for q in tail..start + l {
                    s.pos[s.lab[q] as usize] = q as u32;
                }
                s.len[start] = groups[0].2 as u32;
                for &(_, gs, size) in &groups[1..] {
                    s.len[gs] = size as u32;
                    for q in gs..gs + size {
                        s.cell_of[s.lab[q] as usize] = gs as u32;
                    }
                }
                s.classes += groups.len() as u32 - 1;
                let was_queued = queued[start];
                let largest = groups
                    .iter()
                    .enumerate()
                    .max_by_key(|&(i, g)| (g.2, std::cmp::Reverse(i)))
                    .map(|(i, _)| i)
                    .unwrap();
                for (gi, &(_, gs, _)) in groups.iter().enumerate() {
                    if (was_queued || gi != largest) && !queued[gs] {
                        queued[gs] = true;
                        queue.push_back(gs as u32);
                    }
                }
            }
            for &y in &touched {
                count[y as usize] = 0;
            }
            touched.clear();
        }
    }

    /// Splits `v` off the front of its cell and refines.
    fn individualize(&self, s: &State, v: usize) -> State {
        let mut t = s.clone();
        let c = t.cell_of[v] as usize;
        let l = t.len[c] as usize;
        let p = t.pos[v] as usize;
        let other = t.lab[c];
        t.lab.swap(c, p);
        t.pos[v] = c as u32;
        t.pos[other as usize] = p as u32;
        t.len[c] = 1;
        t.len[c + 1] = (l - 1) as u32;
        for q in c + 1..c + l {
            t.cell_of[t.lab[q] as usize] = (c + 1) as u32;
        }
        t.classes += 1;
        t.trace = hash_of(&(t.trace, "ind", c));
        self.refine(&mut t, vec![c as u32]);
        t
    }

    /// First non-singleton cell, optionally only among cells meeting `focus`;
    /// returns the cell and the vertex the left path individualizes.
    fn target(&self, p: &State, focus: Option<&[bool]>) -> Option<(u32, usize)> {
        let mut c = 0;
        while c < p.lab.len() {
            let l = p.len[c] as usize;
            if l > 1 {
                let cell = &p.lab[c..c + l];
                let pick = match focus {
                    None => Some(cell[0]),
                    Some(f) => cell.iter().copied().find(|&v| f[v as usize]),
                };
                if let Some(v) = pick {
                    return Some((c as u32, v as usize));
                }
            }
            c += l;
        }
        None
    }

    fn leaf(&self, p: &State, q: &State) -> Option<Permutation> {
        let mut images = vec![0usize; p.lab.len()];
        for (&x, &y) in p.lab.iter().zip(&q.lab) {
            images[x as usize] = y as usize;
        }
        let perm = Permutation::from_images_unchecked(images).certify(self.f)?;
        self.constraints.admits(&perm).then_some(perm)
    }

    fn dfs(
        &self,
        p: &State,
        q: &State,
        focus: Option<&[bool]>,
        nodes: &mut usize,
        emit: &mut dyn FnMut(Permutation) -> Flow,
    ) -> Result<Flow> {
        *nodes += 1;
        if *nodes > self.node_limit {
            return Err(Error::CapExceeded { cap: self.node_limit, found: 0 });
        }
        if p.discrete() {
            return Ok(match self.leaf(p, q) {
                Some(perm) => emit(perm),
                None => Flow::Continue,
            });
        }
        let Some((cell, a)) = self.target(p, focus) else {
            // every focus vertex is isolated: one extension suffices
            let mut found = None;
            self.dfs(p, q, None, nodes, &mut |perm| {
                found = Some(perm);
                Flow::Stop
            })?;
            return Ok(match found {
                Some(perm) => emit(perm),
                None => Flow::Continue,
            });
        };
        let p_next = self.individualize(p, a);
        let candidates: Vec<u32> = q.cell(cell).to_vec();
        for b in candidates {
            let q_next = self.individualize(q, b as usize);
            if !p_next.compatible(&q_next) {
                continue;
            }
            if let Flow::Stop = self.dfs(&p_next, &q_next, focus, nodes, emit)? {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }

    /// All constrained automorphisms, up to `limit`.
    pub fn all(&self, limit: usize) -> Result<SearchResult> {
        self.collect(None, limit)
    }

    /// One automorphism per distinct restriction to `focus`, up to `limit`.
    /// `focus` must be invariant under the constrained group for the
    /// restrictions to be permutations of it.
    pub fn restricted(&self, focus: &[usize], limit: usize) -> Result<SearchResult> {
        let mut mask = vec![false; self.f.len()];
        for &i in focus {
            mask[i] = true;
        }
        self.collect(Some(&mask), limit)
    }

    fn collect(&self, focus: Option<&[bool]>, limit: usize) -> Result<SearchResult> {
        let mut out = Vec::new();
        let mut exhaustive = true;
        let mut nodes = 0;
        if self.f.is_empty() {
            return Ok(SearchResult { automorphisms: vec![Permutation::identity(0)], exhaustive });
        }
        self.dfs(&self.root, &self.root, focus, &mut nodes, &mut |perm| {
            if out.len() >= limit {
                exhaustive = false;
                return Flow::Stop;
            }
            out.push(perm);
            Flow::Continue
        })?;
        Ok(SearchResult { automorphisms: out, exhaustive })
    }

    /// Some constrained automorphism mapping `a` to `b`, if one exists.
    pub fn find_mapping(&self, a: usize, b: usize) -> Result<Option<Permutation>> {
        if self.root.cell_of[a] != self.root.cell_of[b] {
            return Ok(None);
        }
        if a == b {
            return Ok(Permutation::identity(self.f.len()).certify(self.f));
        }
        let p = self.individualize(&self.root, a);
        let q = self.individualize(&self.root, b);
        if !p.compatible(&q) {
            return Ok(None);
        }
        let mut found = None;
        let mut nodes = 0;
        self.dfs(&p, &q, None, &mut nodes, &mut |perm| {
            found = Some(perm);
            Flow::Stop
        })?;
        Ok(found)
    }
}

/// Every automorphism of `f` satisfying `c`, complete up to `limit`.
/// When the limit is hit the partial list is returned with
/// `exhaustive = false`.
pub fn search_automorphisms(f: &FiniteGraph, c: &SearchConstraints, limit: usize) -> Result<SearchResult> {
    Engine::new(f, c.clone())?.all(limit)
}
