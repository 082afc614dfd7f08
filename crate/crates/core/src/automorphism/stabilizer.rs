use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{ball, BallView, Graph, VertexId};

use super::search::{Engine, SearchConstraints, search_cap};
use super::Permutation;

/// Groups larger than this are not closure-checked element by element.
const CLOSURE_CHECK_LIMIT: usize = 2048;

/// Restrictions to `B_v(inner)` of the root-fixing automorphisms of the
/// induced ball `B_v(outer)`.
///
/// This over-approximates the group induced on `B_v(inner)` by the
/// root stabilizer of the infinite graph: every genuine automorphism
/// restricts to one of these, but a ball automorphism need not extend.
#[derive(Clone, Debug)]
pub struct StabilizerRestriction {
    pub root: VertexId,
    pub inner: usize,
    pub outer: usize,
    /// The inner ball; permutations act on its index set.
    pub ball: BallView,
    pub elements: Vec<Permutation>,
    /// Whether closure under composition and inverses was checked.
    pub closure_verified: bool,
}

pub fn stabilizer_restriction(g: &dyn Graph, v: &VertexId, inner: usize, outer: usize) -> Result<StabilizerRestriction> {
    stabilizer_restriction_capped(g, v, inner, outer, search_cap())
}

pub fn stabilizer_restriction_capped(
    g: &dyn Graph,
    v: &VertexId,
    inner: usize,
    outer: usize,
    cap: usize,
) -> Result<StabilizerRestriction> {
    if outer < inner {
        return Err(Error::arg(format!("outer radius {outer} must be >= inner radius {inner}")));
    }
    let big = ball(g, v, outer)?;
    let f = big.induced_graph();
    // BFS order is by distance, so the inner ball is a prefix
    let m = big.ball_size(inner);
    let engine = Engine::new(&f, SearchConstraints::fixing_center(0))?;
    let focus: Vec<usize> = (0..m).collect();
    let found = engine.restricted(&focus, cap)?;
    if !found.exhaustive {
        return Err(Error::CapExceeded { cap, found: found.automorphisms.len() });
    }
    let mut elements: Vec<Permutation> = found
        .automorphisms
        .iter()
        .map(|p| p.restrict_prefix(m).expect("root-fixing automorphisms preserve distance"))
        .collect();
    elements.sort_by(|a, b| a.images().cmp(b.images()));
    elements.dedup();
    let mut s = StabilizerRestriction {
        root: v.clone(),
        inner,
        outer,
        ball: big.shrink(inner),
        elements,
        closure_verified: false,
    };
    if s.elements.len() <= CLOSURE_CHECK_LIMIT {
        if !s.is_group() {
            return Err(Error::Structure("restricted ball automorphisms are not closed under composition".into()));
        }
        s.closure_verified = true;
    }
    Ok(s)
}

impl StabilizerRestriction {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.ball.index_of(v)
    }

    /// Identity present, closed under inverses and composition.
    pub fn is_group(&self) -> bool {
        let set: HashSet<&[usize]> = self.elements.iter().map(|p| p.images()).collect();
        let n = self.ball.len();
        if !set.contains(Permutation::identity(n).images()) {
            return false;
        }
        self.elements.iter().all(|a| {
            set.contains(a.inverse().images()) && self.elements.iter().all(|b| set.contains(a.compose(b).images()))
        })
    }

    /// Subgroup fixing each listed vertex.
    pub fn pointwise_stabilizer(&self, pts: &[VertexId]) -> Result<StabilizerRestriction> {
        let idx = pts
            .iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| Error::arg(format!("{p} lies outside B_{}({})", self.root, self.inner)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.stabilizer_of_indices(&idx))
    }

    pub fn stabilizer_of_indices(&self, idx: &[usize]) -> StabilizerRestriction {
        StabilizerRestriction {
            elements: self.elements.iter().filter(|p| idx.iter().all(|&i| p.fixes(i))).cloned().collect(),
            ..self.clone_shell()
        }
    }

    /// Elements mapping the index set onto itself.
    pub fn setwise_stabilizer_of_indices(&self, idx: &[usize]) -> StabilizerRestriction {
        let mut inside = vec![false; self.ball.len()];
        for &i in idx {
            inside[i] = true;
        }
        StabilizerRestriction {
            elements: self.elements.iter().filter(|p| idx.iter().all(|&i| inside[p.apply(i)])).cloned().collect(),
            ..self.clone_shell()
        }
    }

    fn clone_shell(&self) -> StabilizerRestriction {
        StabilizerRestriction {
            root: self.root.clone(),
            inner: self.inner,
            outer: self.outer,
            ball: self.ball.clone(),
            elements: Vec::new(),
            closure_verified: self.closure_verified,
        }
    }

    /// Whether every element fixes vertex index `i`.
    pub fn fixes(&self, i: usize) -> bool {
        self.elements.iter().all(|p| p.fixes(i))
    }

    /// Whether every element fixes `B_root(r)` pointwise.
    pub fn fixes_ball(&self, r: usize) -> bool {
        (0..self.ball.len()).filter(|&i| self.ball.dist[i] <= r).all(|i| self.fixes(i))
    }

    /// Pairs of distinct elements that agree on the sphere `S_root(inner)`.
    /// On an infinite-motion graph such pairs witness a truncation artefact.
    pub fn sphere_injectivity_violations(&self) -> Vec<(usize, usize)> {
        let sphere: Vec<usize> = self.ball.sphere_indices(self.inner).collect();
        let mut seen: std::collections::HashMap<Vec<usize>, usize> = std::collections::HashMap::new();
        let mut out = Vec::new();
        for (k, p) in self.elements.iter().enumerate() {
            let key: Vec<usize> = sphere.iter().map(|&i| p.apply(i)).collect();
            if let Some(&first) = seen.get(&key) {
                out.push((first, k));
            } else {
                seen.insert(key, k);
            }
        }
        out
    }
}
