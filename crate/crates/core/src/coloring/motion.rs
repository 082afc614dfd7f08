//! The motion/growth coloring: an anchor `{v} ∪ B_w(1)` and, at a sparse
//! sequence of depths `n_i` with small spheres, a set `C_i` chosen by
//! descending through pointwise stabilizers of the root-fixing group.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{Coloring, Metadata, Strategy};
use crate::automorphism::{chain_length_bound, stabilizer_restriction, Permutation};
use crate::dsc::sphere_condition_holds;
use crate::error::{Error, Result};
use crate::graph::{Bfs, Graph, GraphHandle, VertexId};
use crate::rational::Ratio;

/// Extra radius of the ball whose automorphisms stand in for the group
/// induced on `B_v(n)` by the root stabilizer.
pub const DEFAULT_MARGIN: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub n: usize,
    pub previous: usize,
    pub sphere_size: usize,
    pub group_order: usize,
    pub closure_verified: bool,
    /// `C_i` in the order chosen.
    pub c: Vec<VertexId>,
    pub depths: Vec<usize>,
    /// Orders of `K`, `K_(x0)`, `K_(x0,x1)`, ...
    pub orders: Vec<usize>,
    /// `x0` was taken as the first sphere vertex because the group fixes
    /// the whole sphere.
    pub forced_x0: bool,
    pub strict_descent: bool,
    /// Vertices of `B_v(n)` still moved by the pointwise stabilizer of `C_i`.
    pub residual_moved: Vec<VertexId>,
    pub setwise_equals_pointwise: bool,
    /// Longest subgroup chain in `Sym(|S_v(n)|)` and the room `n - previous`.
    pub chain_length: usize,
    pub chain_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotionMetadata {
    pub epsilon: String,
    pub margin: usize,
    pub w: VertexId,
    pub d_vw: usize,
    /// `2 d(v,w) + 1`; no level vertex lies this close to the root.
    pub n0: usize,
    pub levels: Vec<LevelRecord>,
    /// Level vertices sit in pairwise distinct spheres.
    pub sphere_discipline: bool,
    /// No level vertex inside `B_v(2 d(v,w) + 1)`.
    pub anchor_clear: bool,
    /// Sphere sizes measured from the root (BFS stops at the budget).
    pub measured_spheres: Vec<usize>,
}

pub fn motion_growth_coloring(g: &GraphHandle, v: &VertexId, eps: Ratio, radius: usize) -> Result<Coloring> {
    motion_growth_coloring_with(g, v, eps, radius, DEFAULT_MARGIN)
}

pub fn motion_growth_coloring_with(
    g: &GraphHandle,
    v: &VertexId,
    eps: Ratio,
    radius: usize,
    margin: usize,
) -> Result<Coloring> {
    let gr: &dyn Graph = &**g;
    let eps = eps.open_unit()?;

    // sphere sizes and the first vertex of degree >= 3 outside B_v(2)
    let mut bfs = Bfs::new(gr, v)?;
    let mut spheres = vec![1usize];
    let mut anchor: Option<(VertexId, usize)> = None;
    while bfs.depth() < radius {
        match bfs.advance() {
            Ok([]) => break,
            Ok(layer) => {
                spheres.push(layer.len());
                if anchor.is_none() && bfs.depth() >= 3 {
                    for x in bfs.layer().to_vec() {
                        if gr.neighbors(&x)?.len() >= 3 {
                            anchor = Some((x, bfs.depth()));
                            break;
                        }
                    }
                }
            }
            Err(Error::BudgetExceeded { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    let good: Vec<usize> = (1..spheres.len()).filter(|&n| sphere_condition_holds(spheres[n], n, eps)).collect();
    if good.is_empty() {
        let shown: Vec<String> = spheres.iter().take(16).map(usize::to_string).collect();
        return Err(Error::Precondition(format!(
            "no depth n <= {} with |S_v(n)| <= 2n(1-{eps})/3; measured sphere sizes [{}{}]",
            spheres.len() - 1,
            shown.join(", "),
            if spheres.len() > 16 { ", ..." } else { "" }
        )));
    }
    let Some((w, d_vw)) = anchor else {
        return Err(Error::Structure(format!("no vertex of degree >= 3 at distance 3..={radius} from {v}")));
    };

    let n0 = 2 * d_vw + 1;
    let mut ns = Vec::new();
    let mut prev = n0;
    loop {
        // n eps > prev, the sphere condition, and room for the margin
        let next = good.iter().copied().find(|&n| {
            n as u128 * eps.num as u128 > prev as u128 * eps.den as u128 && n + margin <= radius
        });
        match next {
            Some(n) => {
                ns.push(n);
                prev = n;
            }
            None => break,
        }
    }
    if ns.is_empty() {
        return Err(Error::Precondition(format!(
            "no level n with n*{eps} > {n0} and the sphere condition within radius {radius} - margin {margin}"
        )));
    }

    let mut blue: BTreeSet<VertexId> = BTreeSet::from([v.clone(), w.clone()]);
    blue.extend(gr.neighbors(&w)?);
    let mut levels = Vec::new();
    let mut prev = n0;
    for &n in &ns {
        levels.push(level(gr, v, n, prev, margin)?);
        prev = n;
    }

    let mut seen_depths = HashSet::new();
    let mut sphere_discipline = true;
    let mut anchor_clear = true;
    for l in &levels {
        for (x, &dx) in l.c.iter().zip(&l.depths) {
            sphere_discipline &= seen_depths.insert(dx);
            anchor_clear &= dx > n0;
            blue.insert(x.clone());
        }
    }

    let mut parameters = BTreeMap::new();
    parameters.insert("epsilon".to_string(), json!(eps.to_string()));
    parameters.insert("margin".to_string(), json!(margin));
    let mut anchor_set = vec![v.clone(), w.clone()];
    anchor_set.extend(gr.neighbors(&w)?);
    let meta = MotionMetadata {
        epsilon: eps.to_string(),
        margin,
        w,
        d_vw,
        n0,
        levels,
        sphere_discipline,
        anchor_clear,
        measured_spheres: spheres,
    };
    Ok(Coloring::assemble(
        g.clone(),
        v.clone(),
        radius,
        Strategy::MotionGrowth,
        parameters,
        anchor_set,
        blue,
        Metadata::MotionGrowth(meta),
    ))
}

fn level(g: &dyn Graph, v: &VertexId, n: usize, prev: usize, margin: usize) -> Result<LevelRecord> {
    let k = stabilizer_restriction(g, v, n, n + margin)?;
    let b = &k.ball;
    let sphere: Vec<usize> = b.sphere_indices(n).collect();
    let first = *sphere.first().ok_or_else(|| Error::Structure(format!("S_{v}({n}) is empty")))?;
    let mut forced_x0 = true;
    let mut x0 = first;
    if !k.fixes_ball(n) {
        if let Some(&x) = sphere.iter().find(|&&i| !k.fixes(i)) {
            x0 = x;
            forced_x0 = false;
        }
    }
    let mut chosen = vec![x0];
    let mut cur = k.stabilizer_of_indices(&chosen);
    let mut orders = vec![k.order(), cur.order()];
    let mut j = 1;
    while n - j > prev {
        let limit = n - j;
        let next = (0..b.len()).find(|&i| b.dist[i] > prev && b.dist[i] <= limit && !cur.fixes(i));
        let Some(x) = next else { break };
        chosen.push(x);
        cur = k.stabilizer_of_indices(&chosen);
        orders.push(cur.order());
        j += 1;
    }
    let strict_descent =
        orders.windows(2).enumerate().all(|(t, w)| w[1] < w[0] || (t == 0 && forced_x0));
    let setwise_group = k.setwise_stabilizer_of_indices(&chosen);
    let setwise: BTreeSet<&[usize]> = setwise_group.elements.iter().map(Permutation::images).collect();
    let pointwise: BTreeSet<&[usize]> = cur.elements.iter().map(Permutation::images).collect();
    let residual_moved = (0..b.len()).filter(|&i| !cur.fixes(i)).map(|i| b.vertices[i].clone()).collect();
    Ok(LevelRecord {
        n,
        previous: prev,
        sphere_size: sphere.len(),
        group_order: k.order(),
        closure_verified: k.closure_verified,
        c: chosen.iter().map(|&i| b.vertices[i].clone()).collect(),
        depths: chosen.iter().map(|&i| b.dist[i]).collect(),
        orders,
        forced_x0,
        strict_descent,
        residual_moved,
        setwise_equals_pointwise: setwise == pointwise,
        chain_length: chain_length_bound(sphere.len())?,
        chain_bound: n - prev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_distinguishing;
    use crate::generators::{FamilySpec, TREE_ROOT};

    fn quarter() -> Ratio {
        Ratio::new(1, 4).unwrap()
    }

    #[test]
    fn line_has_no_branch_vertex() {
        let g = FamilySpec::BiinfinitePath.build().unwrap();
        let err = motion_growth_coloring(&g, &"0".into(), quarter(), 60).unwrap_err();
        assert!(matches!(err, Error::Structure(_)), "{err}");
    }

    #[test]
    fn tree_spheres_are_too_large() {
        let g = FamilySpec::regular_tree(3).build().unwrap();
        let err = motion_growth_coloring(&g, &TREE_ROOT.into(), quarter(), 8).unwrap_err();
        let Error::Precondition(msg) = err else { panic!("{err}") };
        assert!(msg.contains("1, 3, 6, 12"), "{msg}");
    }

    #[test]
    fn twin_leaf_path_levels() {
        let g = FamilySpec::TwinLeafPath.build().unwrap();
        let c = motion_growth_coloring(&g, &"5".into(), quarter(), 60).unwrap();
        let Metadata::MotionGrowth(m) = &c.metadata else { panic!() };
        assert_eq!((m.w.as_str(), m.d_vw, m.n0), ("0", 5, 11));
        assert_eq!(m.levels.len(), 1);
        let l = &m.levels[0];
        assert_eq!(l.n, 45);
        assert_eq!(l.group_order, 2);
        assert!(l.forced_x0);
        assert_eq!(l.c, vec![VertexId::new("-40")]);
        assert_eq!(l.residual_moved.len(), 2);
        assert!(l.setwise_equals_pointwise && l.strict_descent);
        assert!(l.chain_length < l.chain_bound);
        assert!(m.sphere_discipline && m.anchor_clear);
        assert_eq!(c.blue_count(), 7);
        assert!(verify_distinguishing(&c, 60, 5).unwrap().pass);
        assert_eq!(c.replay().unwrap().blue, c.blue);
    }
}
