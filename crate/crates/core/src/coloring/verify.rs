//! Truncation-level verification: every color-preserving automorphism of
//! the induced ball `B_v(R_outer)` must fix `B_v(r_inner)` pointwise.

use std::collections::HashMap;

use serde::Serialize;

use super::Coloring;
use crate::automorphism::{Engine, Permutation, SearchConstraints};
use crate::error::{Error, Result};
use crate::graph::{ball, ball_within, vertex_budget, BallView, VertexId};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Required gap `R_outer - r_inner`.
    pub margin: usize,
    /// Maximum number of automorphisms listed in the report.
    pub list_limit: usize,
    /// Vertex budget for the outer ball; the process-wide budget if unset.
    pub budget: Option<usize>,
    pub node_limit: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { margin: 4, list_limit: 16, budget: None, node_limit: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ListedAutomorphism {
    /// Cycle notation on vertex encodings, or a subtree swap.
    pub cycles: String,
    /// Number of moved ball vertices, when it fits in `usize`.
    pub motion: Option<usize>,
    pub fixes_inner: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub root: VertexId,
    pub r_outer: usize,
    pub r_inner: usize,
    pub margin: usize,
    /// `search` on the materialized ball, `regular-tree` for the
    /// structural computation on regular trees too large to materialize.
    pub route: String,
    pub ball_size: usize,
    pub blue_in_ball: usize,
    pub pass: bool,
    /// Inner vertices moved by some color-preserving ball automorphism.
    pub moved_inner: Vec<VertexId>,
    /// Automorphisms exhibiting the moved vertices.
    pub offending: Vec<ListedAutomorphism>,
    pub listed: Vec<ListedAutomorphism>,
    /// Whether `listed` is the whole color-preserving group of the ball.
    pub listing_exhaustive: bool,
    /// A PASS is evidence at this radius, not a proof for the infinite graph.
    pub one_sided: bool,
}

pub fn verify_distinguishing(c: &Coloring, r_outer: usize, r_inner: usize) -> Result<VerificationReport> {
    verify_distinguishing_with(c, r_outer, r_inner, &VerifyOptions::default())
}

pub fn verify_distinguishing_with(
    c: &Coloring,
    r_outer: usize,
    r_inner: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    check_radii(r_outer, r_inner, opts.margin)?;
    if r_outer > c.radius {
        return Err(Error::BeyondRadius { requested: r_outer, available: c.radius });
    }
    let g = &**c.graph();
    let budget = opts.budget.unwrap_or_else(vertex_budget);
    if g.regular_tree_degree().is_some_and(|d| tree_ball_size(d, r_outer) > budget) {
        return tree_route(c, r_outer, r_inner, opts);
    }
    let b = match ball_within(g, &c.root, r_outer, budget) {
        Ok(b) => b,
        Err(Error::BudgetExceeded { .. }) if g.regular_tree_degree().is_some() => {
            return tree_route(c, r_outer, r_inner, opts);
        }
        Err(e) => return Err(e),
    };
    let blue = c.blue_indices(&b);
    let outcome = verify_ball(&b, &blue, r_inner, opts.list_limit.max(1), opts.node_limit)?;
    let m = b.ball_size(r_inner);
    let describe = |p: &Permutation| ListedAutomorphism {
        cycles: p.cycle_notation(&b.vertices),
        motion: Some(p.motion()),
        fixes_inner: (0..m).all(|i| p.fixes(i)),
    };
    let (listed, listing_exhaustive) = if opts.list_limit > 0 {
        let found = outcome.engine_all(&b, &blue, opts)?;
        (found.0.iter().map(describe).collect(), found.1)
    } else {
        (Vec::new(), false)
    };
    Ok(VerificationReport {
        root: c.root.clone(),
        r_outer,
        r_inner,
        margin: opts.margin,
        route: "search".into(),
        ball_size: b.len(),
        blue_in_ball: blue.len(),
        pass: outcome.pass(),
        moved_inner: outcome.moved.iter().map(|&i| b.vertices[i].clone()).collect(),
        offending: outcome.offending.iter().take(opts.list_limit.max(1)).map(describe).collect(),
        listed,
        listing_exhaustive,
        one_sided: true,
    })
}

pub(crate) fn check_radii(r_outer: usize, r_inner: usize, margin: usize) -> Result<()> {
    if r_inner + margin > r_outer {
        return Err(Error::arg(format!("r_inner {r_inner} + margin {margin} exceeds R_outer {r_outer}")));
    }
    Ok(())
}

pub(crate) struct BallOutcome {
    /// Moved inner indices, ascending.
    pub moved: Vec<usize>,
    pub offending: Vec<Permutation>,
}

impl BallOutcome {
    pub fn pass(&self) -> bool {
        self.moved.is_empty()
    }

    fn engine_all(&self, b: &BallView, blue: &[usize], opts: &VerifyOptions) -> Result<(Vec<Permutation>, bool)> {
        let f = b.induced_graph();
        let mut e = Engine::new(&f, SearchConstraints { setwise: vec![blue.to_vec()], ..SearchConstraints::none() })?;
        if let Some(n) = opts.node_limit {
            e = e.with_node_limit(n);
        }
        let r = e.all(opts.list_limit)?;
        Ok((r.automorphisms, r.exhaustive))
    }
}

/// Orbit computation on the inner ball: an inner vertex is fixed by the
/// whole color-preserving group iff no other member of its refined cell
/// is an image of it.
pub(crate) fn verify_ball(
    b: &BallView,
    blue: &[usize],
    r_inner: usize,
    keep: usize,
    node_limit: Option<usize>,
) -> Result<BallOutcome> {
    let f = b.induced_graph();
    let mut e = Engine::new(&f, SearchConstraints { setwise: vec![blue.to_vec()], ..SearchConstraints::none() })?;
    if let Some(n) = node_limit {
        e = e.with_node_limit(n);
    }
    let m = b.ball_size(r_inner);
    let mut moved = vec![false; m];
    let mut offending = Vec::new();
    for i in 0..m {
        if moved[i] || e.is_singleton(i) {
            continue;
        }
        for j in e.cell_of(i) {
            if j == i {
                continue;
            }
            if let Some(p) = e.find_mapping(i, j)? {
                for (k, flag) in moved.iter_mut().enumerate() {
                    if !p.fixes(k) {
                        *flag = true;
                    }
                }
                if offending.len() < keep {
                    offending.push(p);
                }
                break;
            }
        }
    }
    Ok(BallOutcome { moved: (0..m).filter(|&i| moved[i]).collect(), offending })
}

/// Interned isomorphism type of a colored rooted subtree of given height.
#[derive(Clone, PartialEq, Eq, Hash)]
enum SubtreeKey {
    /// Red and free of blue vertices.
    Empty(usize),
    Node { blue: bool, height: usize, children: Vec<u32> },
}

/// On a regular tree the only center of `B_v(R)` is `v`, so ball
/// automorphisms are the automorphisms of the colored tree rooted at `v`.
/// A vertex is moved by one of them iff it or one of its ancestors below
/// the root has a sibling whose colored subtree has the same type.
fn tree_route(c: &Coloring, r_outer: usize, r_inner: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let g = &**c.graph();
    let d = g.regular_tree_degree().expect("caller checked");
    let depth_of = |x: &VertexId| -> Result<usize> {
        g.exact_distance(&c.root, x)
            .ok_or_else(|| Error::Unsupported("structural verification needs tree distances".into()))?
    };
    let parent_of = |x: &VertexId, k: usize| -> Result<VertexId> {
        for y in g.neighbors(x)? {
            if depth_of(&y)? + 1 == k {
                return Ok(y);
            }
        }
        Err(Error::Structure(format!("{x} has no parent towards {}", c.root)))
    };

    // vertices with a blue descendant-or-self, by depth
    let mut skeleton: HashMap<VertexId, usize> = HashMap::new();
    let mut blue_in_ball = 0;
    for x in &c.blue {
        let k = depth_of(x)?;
        if k > r_outer {
            continue;
        }
        blue_in_ball += 1;
        let (mut y, mut k) = (x.clone(), k);
        while !skeleton.contains_key(&y) {
            skeleton.insert(y.clone(), k);
            if k == 0 {
                break;
            }
            y = parent_of(&y, k)?;
            k -= 1;
        }
    }

    let mut intern: HashMap<SubtreeKey, u32> = HashMap::new();
    let mut type_of: HashMap<VertexId, u32> = HashMap::new();
    fn key_id(key: SubtreeKey, intern: &mut HashMap<SubtreeKey, u32>) -> u32 {
        let n = intern.len() as u32;
        *intern.entry(key).or_insert(n)
    }
    let children_of = |y: &VertexId, k: usize| -> Result<Vec<VertexId>> {
        if k >= r_outer {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for z in g.neighbors(y)? {
            if depth_of(&z)? == k + 1 {
                out.push(z);
            }
        }
        Ok(out)
    };
    let mut order: Vec<(&VertexId, usize)> = skeleton.iter().map(|(y, &k)| (y, k)).collect();
    order.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    for (y, k) in order {
        let mut kids = Vec::new();
        for z in children_of(y, k)? {
            kids.push(match type_of.get(&z) {
                Some(&t) => t,
                None => key_id(SubtreeKey::Empty(r_outer - k - 1), &mut intern),
            });
        }
        kids.sort_unstable();
        let key = SubtreeKey::Node { blue: c.blue.contains(y), height: r_outer - k, children: kids };
        let t = key_id(key, &mut intern);
        type_of.insert(y.clone(), t);
    }

    let inner = ball(g, &c.root, r_inner)?;
    let mut moved = vec![false; inner.len()];
    let mut offending = Vec::new();
    for i in 1..inner.len() {
        let z = &inner.vertices[i];
        let k = inner.dist[i];
        let p = parent_of(z, k)?;
        let pi = inner.index_of(&p).expect("parent lies in the inner ball");
        let mut ty = |x: &VertexId| match type_of.get(x) {
            Some(&t) => t,
            None => key_id(SubtreeKey::Empty(r_outer - k), &mut intern),
        };
        let mine = ty(z);
        let twin = children_of(&p, k - 1)?.into_iter().find(|s| s != z && ty(s) == mine);
        moved[i] = moved[pi] || twin.is_some();
        if let Some(s) = twin {
            if offending.len() < opts.list_limit.max(1) && !moved[pi] {
                offending.push(ListedAutomorphism {
                    cycles: format!("swap the subtrees below {z} and {s}"),
                    motion: subtree_size(d, r_outer - k).and_then(|n| n.checked_mul(2)),
                    fixes_inner: false,
                });
            }
        }
    }
    let ball_size = tree_ball_size(d, r_outer);
    Ok(VerificationReport {
        root: c.root.clone(),
        r_outer,
        r_inner,
        margin: opts.margin,
        route: "regular-tree".into(),
        ball_size,
        blue_in_ball,
        pass: !moved.iter().any(|&m| m),
        moved_inner: (0..inner.len()).filter(|&i| moved[i]).map(|i| inner.vertices[i].clone()).collect(),
        listed: offending.clone(),
        offending,
        listing_exhaustive: false,
        one_sided: true,
    })
}

/// Vertices of a rooted subtree of height `h` below a non-root vertex.
fn subtree_size(d: usize, h: usize) -> Option<usize> {
    let mut total: usize = 0;
    let mut layer: usize = 1;
    for _ in 0..=h {
        total = total.checked_add(layer)?;
        layer = layer.checked_mul(d - 1)?;
    }
    Some(total)
}

fn tree_ball_size(d: usize, r: usize) -> usize {
    if r == 0 {
        return 1;
    }
    subtree_size(d, r - 1).and_then(|s| s.checked_mul(d)).and_then(|s| s.checked_add(1)).unwrap_or(usize::MAX)
}
