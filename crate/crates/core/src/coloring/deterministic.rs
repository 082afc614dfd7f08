//! The deterministic coloring: an anchor edge `ab` pinning the root, plus
//! one far witness per equidistant pair.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{Coloring, Metadata, Strategy};
use crate::dsc::{equidistant_pairs, first_witnesses};
use crate::error::{Error, Result};
use crate::graph::{ball, BallView, Bfs, Graph, GraphHandle, VertexId};

/// Minimum root distance of the `i`-th witness (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum WitnessSchedule {
    /// `7 i^2`
    Strict,
    /// `gap * i`
    Relaxed { gap: usize },
}

impl WitnessSchedule {
    pub fn min_depth(self, i: usize) -> usize {
        match self {
            WitnessSchedule::Strict => 7 * i * i,
            WitnessSchedule::Relaxed { gap } => gap * i,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    /// 1-based position of the pair in the enumeration.
    pub pair: usize,
    pub u: VertexId,
    pub w: VertexId,
    pub x: VertexId,
    pub depth: usize,
    pub d_u: usize,
    pub d_w: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DscMetadata {
    pub schedule: WitnessSchedule,
    pub r_pairs: usize,
    pub a: VertexId,
    pub b: VertexId,
    pub witnesses: Vec<WitnessRecord>,
    /// Anchor edges tried, including the accepted one.
    pub anchors_tried: usize,
    /// `ball` when candidates come from the materialized ball, `tree` for
    /// the lazy search used on trees.
    pub route: String,
}

/// Deterministic coloring with witnesses at depth `>= 7 i^2`.
pub fn dsc_coloring(g: &GraphHandle, v: &VertexId, r_pairs: usize, radius: usize) -> Result<Coloring> {
    build(g, v, r_pairs, radius, WitnessSchedule::Strict)
}

/// As [`dsc_coloring`] with witnesses at depth `>= gap * i`.
pub fn dsc_coloring_relaxed(
    g: &GraphHandle,
    v: &VertexId,
    r_pairs: usize,
    radius: usize,
    gap: usize,
) -> Result<Coloring> {
    if gap == 0 {
        return Err(Error::arg("gap must be >= 1"));
    }
    build(g, v, r_pairs, radius, WitnessSchedule::Relaxed { gap })
}

fn build(g: &GraphHandle, v: &VertexId, r_pairs: usize, radius: usize, schedule: WitnessSchedule) -> Result<Coloring> {
    let gr: &dyn Graph = &**g;
    if radius < 3 {
        return Err(Error::arg("construction radius must be >= 3 to hold the anchor"));
    }
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
    if r_pairs > 0 {
        if radius < r_pairs {
            return Err(Error::arg(format!("radius {radius} must be >= r_pairs {r_pairs}")));
        }
        if let Some(p) = first_witnesses(gr, v, r_pairs, radius)?.into_iter().find(|p| p.failed()) {
            let why = if p.proven_failure { "; the pair are twins, so no radius helps" } else { "" };
            return Err(Error::Precondition(format!(
                "pair #{} {{{}, {}}} has no sphere witness up to radius {radius}{why}",
                p.index + 1,
                p.u,
                p.w
            )));
        }
        let b = ball(gr, v, r_pairs)?;
        pairs = equidistant_pairs(&b, r_pairs)
            .into_iter()
            .map(|(i, j)| (b.vertices[i].clone(), b.vertices[j].clone()))
            .collect();
    }

    let materialized = if gr.is_tree() { None } else { Some(ball(gr, v, radius)?) };
    let near = ball(gr, v, 3)?;
    let mut dist = Distances::new(gr, radius + r_pairs);
    let mut tried = 0;
    for a in near.sphere_indices(2) {
        let mut bs: Vec<usize> = near.adj[a].iter().copied().filter(|&j| near.dist[j] == 3).collect();
        bs.sort_unstable();
        for b in bs {
            tried += 1;
            let (a, b) = (&near.vertices[a], &near.vertices[b]);
            let mut forbidden = lazy_ball(gr, a, 2)?;
            forbidden.extend(lazy_ball(gr, b, 2)?);
            forbidden.extend(lazy_ball(gr, v, 1)?);
            let search = Search { g: gr, v, radius, schedule, forbidden: &forbidden, ball: materialized.as_ref() };
            let witnesses = search.select(&pairs, &mut dist)?;
            let mut blue: BTreeSet<VertexId> = [v.clone(), a.clone(), b.clone()].into();
            blue.extend(witnesses.iter().map(|w| w.x.clone()));
            if !pins(gr, &blue, v, a, b)? {
                continue;
            }
            let mut parameters = BTreeMap::new();
            parameters.insert("r_pairs".to_string(), json!(r_pairs));
            let strategy = match schedule {
                WitnessSchedule::Strict => Strategy::Dsc,
                WitnessSchedule::Relaxed { gap } => {
                    parameters.insert("gap".to_string(), json!(gap));
                    Strategy::DscRelaxed
                }
            };
            let meta = DscMetadata {
                schedule,
                r_pairs,
                a: a.clone(),
                b: b.clone(),
                witnesses,
                anchors_tried: tried,
                route: if materialized.is_some() { "ball" } else { "tree" }.into(),
            };
            return Ok(Coloring::assemble(
                g.clone(),
                v.clone(),
                radius,
                strategy,
                parameters,
                vec![v.clone(), a.clone(), b.clone()],
                blue,
                Metadata::Dsc(meta),
            ));
        }
    }
    Err(Error::AnchorNotFound { root: v.clone() })
}

/// Vertex set of `B_x(r)` without materializing edges.
fn lazy_ball(g: &dyn Graph, x: &VertexId, r: usize) -> Result<HashSet<VertexId>> {
    let mut bfs = Bfs::new(g, x)?;
    let mut out: HashSet<VertexId> = HashSet::from([x.clone()]);
    for _ in 0..r {
        out.extend(bfs.advance()?.iter().cloned());
    }
    Ok(out)
}

/// The local pinning argument: `v` is the only blue vertex other than `a`
/// and `b` within distance 2 of the edge, and `ab` is the only blue edge.
fn pins(g: &dyn Graph, blue: &BTreeSet<VertexId>, v: &VertexId, a: &VertexId, b: &VertexId) -> Result<bool> {
    let mut near = lazy_ball(g, a, 2)?;
    near.extend(lazy_ball(g, b, 2)?);
    let close: BTreeSet<&VertexId> = blue.iter().filter(|x| near.contains(*x)).collect();
    if close != BTreeSet::from([v, a, b]) {
        return Ok(false);
    }
    let mut edges = 0;
    for x in blue {
        for y in g.neighbors(x)? {
            if x < &y && blue.contains(&y) {
                if !((x == a && &y == b) || (x == b && &y == a)) {
                    return Ok(false);
                }
                edges += 1;
            }
        }
    }
    Ok(edges == 1)
}

/// Exact distances, from the family's closed form when it has one and
/// otherwise from cached BFS layers around the source.
struct Distances<'g> {
    g: &'g dyn Graph,
    cap: usize,
    maps: HashMap<VertexId, HashMap<VertexId, usize>>,
}

impl<'g> Distances<'g> {
    fn new(g: &'g dyn Graph, cap: usize) -> Self {
        Distances { g, cap, maps: HashMap::new() }
    }

    /// `d(from, to)`, or `None` beyond the cap.
    fn get(&mut self, from: &VertexId, to: &VertexId) -> Result<Option<usize>> {
        if let Some(d) = self.g.exact_distance(from, to) {
            let d = d?;
            return Ok((d <= self.cap).then_some(d));
        }
        if !self.maps.contains_key(from) {
            let mut bfs = Bfs::new(self.g, from)?;
            let mut m: HashMap<VertexId, usize> = HashMap::from([(from.clone(), 0)]);
            while bfs.depth() < self.cap {
                let d = bfs.depth() + 1;
                let layer = bfs.advance()?;
                if layer.is_empty() {
                    break;
                }
                m.extend(layer.iter().map(|x| (x.clone(), d)));
            }
            self.maps.insert(from.clone(), m);
        }
        Ok(self.maps[from].get(to).copied())
    }
}

struct Search<'a> {
    g: &'a dyn Graph,
    v: &'a VertexId,
    radius: usize,
    schedule: WitnessSchedule,
    forbidden: &'a HashSet<VertexId>,
    ball: Option<&'a BallView>,
}

impl Search<'_> {
    fn select(&self, pairs: &[(VertexId, VertexId)], dist: &mut Distances) -> Result<Vec<WitnessRecord>> {
        let mut chosen: HashSet<VertexId> = HashSet::new();
        let mut used_depths: HashSet<usize> = HashSet::new();
        let mut out = Vec::with_capacity(pairs.len());
        for (k, (u, w)) in pairs.iter().enumerate() {
            let i = k + 1;
            let start = self.schedule.min_depth(i).max(4);
            let mut found = None;
            for t in start..=self.radius {
                if used_depths.contains(&t) {
                    continue;
                }
                let mut admissible = |x: &VertexId| -> Result<Option<(usize, usize)>> {
                    if x == u || x == w || self.forbidden.contains(x) {
                        return Ok(None);
                    }
                    let (Some(du), Some(dw)) = (dist.get(u, x)?, dist.get(w, x)?) else {
                        // both beyond radius + r_pairs, so no sphere up to the radius holds x
                        return Ok(None);
                    };
                    if du == dw || du.min(dw) > self.radius {
                        return Ok(None);
                    }
                    if self.g.neighbors(x)?.iter().any(|y| chosen.contains(y)) {
                        return Ok(None);
                    }
                    Ok(Some((du, dw)))
                };
                let hit = match self.ball {
                    Some(b) => {
                        let mut hit = None;
                        for j in b.sphere_indices(t) {
                            if let Some(d) = admissible(&b.vertices[j])? {
                                hit = Some((b.vertices[j].clone(), d));
                                break;
                            }
                        }
                        hit
                    }
                    None => self.tree_candidate(u, w, t, &mut admissible)?,
                };
                if let Some((x, (du, dw))) = hit {
                    found = Some((x, t, du, dw));
                    break;
                }
            }
            let Some((x, depth, d_u, d_w)) = found else {
                return Err(Error::WitnessExhausted { index: i, u: u.clone(), w: w.clone(), radius: self.radius });
            };
            chosen.insert(x.clone());
            used_depths.insert(depth);
            out.push(WitnessRecord { pair: i, u: u.clone(), w: w.clone(), x, depth, d_u, d_w });
        }
        Ok(out)
    }

    /// First admissible vertex at depth `t` in BFS order, by a pruned
    /// depth-first walk from the root. In a tree a subtree avoiding `u` and
    /// `w` whose top is equidistant from both holds no witness at all.
    fn tree_candidate(
        &self,
        u: &VertexId,
        w: &VertexId,
        t: usize,
        admissible: &mut dyn FnMut(&VertexId) -> Result<Option<(usize, usize)>>,
    ) -> Result<Option<(VertexId, (usize, usize))>> {
        let g = self.g;
        let exact = |a: &VertexId, b: &VertexId| -> Result<usize> {
            g.exact_distance(a, b)
                .ok_or_else(|| Error::Unsupported("lazy witness search needs closed-form tree distances".into()))?
        };
        let du_root = exact(self.v, u)?;
        let dw_root = exact(self.v, w)?;
        let mut stack: Vec<(VertexId, Option<VertexId>, usize)> = vec![(self.v.clone(), None, 0)];
        while let Some((y, parent, depth)) = stack.pop() {
            if depth == t {
                if let Some(d) = admissible(&y)? {
                    return Ok(Some((y, d)));
                }
                continue;
            }
            if depth > 0 {
                let (dy_u, dy_w) = (exact(&y, u)?, exact(&y, w)?);
                let above_u = depth + dy_u == du_root;
                let above_w = depth + dy_w == dw_root;
                if !above_u && !above_w && dy_u == dy_w {
                    continue;
                }
            }
            let children: Vec<VertexId> =
                g.neighbors(&y)?.into_iter().filter(|c| Some(c) != parent.as_ref()).collect();
            for c in children.into_iter().rev() {
                stack.push((c, Some(y.clone()), depth + 1));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{FamilySpec, TREE_ROOT};

    fn blue_edges(c: &Coloring) -> usize {
        let g = c.graph();
        c.blue
            .iter()
            .map(|x| g.neighbors(x).unwrap().iter().filter(|y| *y > x && c.blue.contains(*y)).count())
            .sum()
    }

    #[test]
    fn grid_strict_schedule_runs_out_of_room() {
        let g = FamilySpec::Grid2d.build().unwrap();
        let err = dsc_coloring(&g, &"0,0".into(), 2, 60).unwrap_err();
        assert!(matches!(err, Error::WitnessExhausted { index: 3, .. }), "{err}");
    }

    #[test]
    fn line_pairs_get_far_witnesses() {
        let g = FamilySpec::BiinfinitePath.build().unwrap();
        let c = dsc_coloring(&g, &"0".into(), 3, 80).unwrap();
        let Metadata::Dsc(m) = &c.metadata else { panic!() };
        assert_eq!(m.witnesses.len(), 3);
        for (k, w) in m.witnesses.iter().enumerate() {
            assert!(w.depth >= 7 * (k + 1) * (k + 1));
            assert_ne!(w.d_u, w.d_w);
        }
        assert_eq!(c.blue_count(), 6);
        assert_eq!(blue_edges(&c), 1);
    }

    #[test]
    fn no_pairs_leaves_the_anchor() {
        let g = FamilySpec::Grid2d.build().unwrap();
        let c = dsc_coloring(&g, &"0,0".into(), 0, 5).unwrap();
        assert_eq!(c.blue_count(), 3);
        assert_eq!(c.anchor.len(), 3);
    }

    #[test]
    fn relaxed_grid_has_one_witness_per_pair() {
        let g = FamilySpec::Grid2d.build().unwrap();
        let c = dsc_coloring_relaxed(&g, &"0,0".into(), 2, 80, 2).unwrap();
        assert_eq!(c.blue_count(), 3 + 34);
        assert_eq!(blue_edges(&c), 1);
        let Metadata::Dsc(m) = &c.metadata else { panic!() };
        let depths: HashSet<usize> = m.witnesses.iter().map(|w| w.depth).collect();
        assert_eq!(depths.len(), 34);
        assert_eq!(m.route, "ball");
    }

    #[test]
    fn tree_route_matches_ball_route() {
        // small enough to materialize, so the two routes can be compared
        let g = FamilySpec::regular_tree(3).build().unwrap();
        let c = dsc_coloring_relaxed(&g, &TREE_ROOT.into(), 1, 10, 1).unwrap();
        let Metadata::Dsc(m) = &c.metadata else { panic!() };
        assert_eq!(m.route, "tree");
        let b = ball(&*g, &TREE_ROOT.into(), 10).unwrap();
        let forbidden = {
            let mut f = lazy_ball(&*g, &m.a, 2).unwrap();
            f.extend(lazy_ball(&*g, &m.b, 2).unwrap());
            f.extend(lazy_ball(&*g, &TREE_ROOT.into(), 1).unwrap());
            f
        };
        let pairs: Vec<_> = equidistant_pairs(&b.shrink(1), 1)
            .into_iter()
            .map(|(i, j)| (b.vertices[i].clone(), b.vertices[j].clone()))
            .collect();
        let s = Search {
            g: &*g,
            v: &TREE_ROOT.into(),
            radius: 10,
            schedule: WitnessSchedule::Relaxed { gap: 1 },
            forbidden: &forbidden,
            ball: Some(&b),
        };
        let via_ball = s.select(&pairs, &mut Distances::new(&*g, 11)).unwrap();
        assert_eq!(via_ball, m.witnesses);
    }

    #[test]
    fn twins_fail_the_precondition() {
        let g = FamilySpec::TwinLeafPath.build().unwrap();
        let err = dsc_coloring_relaxed(&g, &"0".into(), 1, 12, 2).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("twins")), "{err}");
    }

    #[test]
    fn replay_is_identical() {
        let g = FamilySpec::Grid2d.build().unwrap();
        let c = dsc_coloring_relaxed(&g, &"0,0".into(), 1, 20, 3).unwrap();
        assert_eq!(c.replay().unwrap().blue, c.blue);
    }
}
