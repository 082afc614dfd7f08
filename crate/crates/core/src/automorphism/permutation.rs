use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, VertexId};

/// A bijection on `0..n`. `certified` is set only after adjacency and
/// non-adjacency preservation has been checked against a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
    certified: bool,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect(), certified: false }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::arg("image array is not a bijection"));
            }
        }
        Ok(Permutation { images, certified: false })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Permutation { images, certified: false }
    }

    /// Builds from cycles, e.g. `[[0, 1], [2, 3, 4]]`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x >= n {
                    return Err(Error::arg(format!("cycle point {x} out of range")));
                }
                images[x] = c[(k + 1) % c.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        let images = other.images.iter().map(|&i| self.images[i]).collect();
        Permutation { images, certified: self.certified && other.certified }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images, certified: self.certified }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.images[i] == i
    }

    /// Number of points moved; on a finite domain this is the motion.
    pub fn motion(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &j)| *i != j).count()
    }

    /// Checks that the permutation maps edges to edges. Since it is a
    /// bijection on a finite graph this also preserves non-edges.
    pub fn certify(mut self, f: &FiniteGraph) -> Option<Permutation> {
        if self.len() != f.len() {
            return None;
        }
        let ok = f.edges().iter().all(|&(a, b)| f.has_edge(self.images[a], self.images[b]));
        self.certified = ok;
        ok.then_some(self)
    }

    /// Restriction to the prefix `0..m`, which must be invariant.
    pub fn restrict_prefix(&self, m: usize) -> Option<Permutation> {
        let images = self.images[..m].to_vec();
        images.iter().all(|&j| j < m).then_some(Permutation { images, certified: self.certified })
    }

    /// Nontrivial cycles in order of their smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation over vertex encodings, `()` for the identity.
    pub fn cycle_notation(&self, ids: &[VertexId]) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (k, &x) in c.iter().enumerate() {
                if k > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{}", ids[x]);
            }
            s.push(')');
        }
        s
    }

    pub fn record(&self, ids: &[VertexId]) -> PermutationRecord {
        PermutationRecord {
            images: self.images.clone(),
            vertices: ids.to_vec(),
            cycles: self.cycle_notation(ids),
            motion: self.motion(),
        }
    }
}

/// Serialized form: image indices alongside the index-to-vertex mapping.
#[derive(Clone, Debug, Serialize)]
pub struct PermutationRecord {
    pub images: Vec<usize>,
    pub vertices: Vec<VertexId>,
    pub cycles: String,
    pub motion: usize,
}

/// Count of non-fixed points.
pub fn motion_of(p: &Permutation) -> usize {
    p.motion()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let p = Permutation::from_images(vec![0, 2, 1, 4, 7, 8, 3, 5, 6]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        let q = Permutation::from_images(vec![1, 0, 2]).unwrap();
        let r = Permutation::from_images(vec![0, 2, 1]).unwrap();
        // r first, then q: 0->0->1, 1->2->2, 2->1->0
        assert_eq!(q.compose(&r).images(), &[1, 2, 0]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
    }

    #[test]
    fn motion_counts_moved_points() {
        assert_eq!(Permutation::identity(5).motion(), 0);
        let reflection = Permutation::from_images(vec![4, 3, 2, 1, 0]).unwrap();
        assert_eq!(motion_of(&reflection), 4);
    }

    #[test]
    fn cycle_notation_uses_vertex_names() {
        let ids: Vec<VertexId> = ["a", "b", "c", "d"].iter().map(|s| VertexId::new(*s)).collect();
        let p = Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(p.cycle_notation(&ids), "(a c)(b d)");
        assert_eq!(Permutation::identity(4).cycle_notation(&ids), "()");
    }

    #[test]
    fn certification_checks_edges() {
        let path = FiniteGraph::with_numbered_vertices(3, &[(0, 1), (1, 2)]);
        assert!(Permutation::from_images(vec![2, 1, 0]).unwrap().certify(&path).is_some());
        assert!(Permutation::from_images(vec![1, 0, 2]).unwrap().certify(&path).is_none());
    }
}
