//! Sphere comparison: witness sets, the distinct-spheres checker, the
//! ball-equivalence relation and growth profiles.
//!
//! Every infinitary condition is checked up to an explicit radius that is
//! carried in the report. A pass is evidence at that radius; a failure at
//! radius `R` is not a disproof.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ball, vertex_budget, BallView, Bfs, Graph, VertexId};
use crate::rational::Ratio;

/// `dsc(u, w)` truncated at depth `R`: every `x` in `S_u(n) Δ S_w(n)` for
/// some `1 <= n <= R`, mapped to all such `n`.
///
/// `u` and `w` themselves always belong to the set (at depth `d(u, w)`).
/// See [`nontrivial_witnesses`] for the set the checker uses.
pub fn dsc_set(g: &dyn Graph, u: &VertexId, w: &VertexId, radius: usize) -> Result<BTreeMap<VertexId, Vec<usize>>> {
    if u == w {
        return Err(Error::arg("dsc(u,w) needs distinct vertices"));
    }
    if radius < 1 {
        return Err(Error::arg("witness radius must be >= 1"));
    }
    let bu = ball(g, u, radius)?;
    let bw = ball(g, w, radius)?;
    let mut out: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (this, other) in [(&bu, &bw), (&bw, &bu)] {
        for (x, &n) in this.vertices.iter().zip(&this.dist) {
            if n >= 1 && other.distance_of(x) != Some(n) {
                out.entry(x.clone()).or_default().push(n);
            }
        }
    }
    for depths in out.values_mut() {
        depths.sort_unstable();
        depths.dedup();
    }
    Ok(out)
}

/// [`dsc_set`] without the pair members.
pub fn nontrivial_witnesses(
    g: &dyn Graph,
    u: &VertexId,
    w: &VertexId,
    radius: usize,
) -> Result<BTreeMap<VertexId, Vec<usize>>> {
    let mut set = dsc_set(g, u, w, radius)?;
    set.remove(u);
    set.remove(w);
    Ok(set)
}

/// Unordered pairs of distinct vertices equidistant from the ball's root,
/// both within `r_pairs`, in BFS-then-lexicographic order of their indices.
pub fn equidistant_pairs(b: &BallView, r_pairs: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for d in 1..=r_pairs.min(b.radius) {
        let layer: Vec<usize> = b.sphere_indices(d).collect();
        for (i, &a) in layer.iter().enumerate() {
            for &c in &layer[i + 1..] {
                pairs.push((a, c));
            }
        }
    }
    pairs
}

/// Compares `S_u(n) \ {u, w}` and `S_w(n) \ {u, w}` for `n = 1..=radius`.
/// Returns the first differing depth and the number of differing depths
/// (the count stops at the first difference when `stop_at_first`).
pub fn sphere_differences(
    g: &dyn Graph,
    u: &VertexId,
    w: &VertexId,
    radius: usize,
    stop_at_first: bool,
) -> Result<(Option<usize>, usize)> {
    let mut bu = Bfs::new(g, u)?;
    let mut bw = Bfs::new(g, w)?;
    let mut first = None;
    let mut count = 0;
    for n in 1..=radius {
        let mut a = bu.advance()?.to_vec();
        let mut b = bw.advance()?.to_vec();
        if a.is_empty() && b.is_empty() {
            break;
        }
        a.retain(|x| x != u && x != w);
        b.retain(|x| x != u && x != w);
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            count += 1;
            first.get_or_insert(n);
            if stop_at_first {
                break;
            }
        }
    }
    Ok((first, count))
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    pub index: usize,
    pub u: VertexId,
    pub w: VertexId,
    pub depth: usize,
    /// First `n <= radius` with `S_u(n) != S_w(n)`; `None` is a FAIL.
    pub first_witness: Option<usize>,
    /// Number of witnessing depths `n <= radius`.
    pub witness_depths: usize,
    /// Set when `N(u) \ {w} = N(w) \ {u}`: then `d(u, x) = d(w, x)` for every
    /// `x` outside the pair, so the failure holds at every radius.
    pub proven_failure: bool,
}

impl PairRecord {
    pub fn failed(&self) -> bool {
        self.first_witness.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DscReport {
    pub root: VertexId,
    pub r_pairs: usize,
    pub radius: usize,
    /// Largest depth reached from the root by BFS up to `radius`.
    pub eccentricity_lower_bound: usize,
    pub pairs: Vec<PairRecord>,
    /// Always true: a FAIL means "no witness up to `radius`", not a proof.
    pub one_sided: bool,
}

impl DscReport {
    pub fn all_witnessed(&self) -> bool {
        self.pairs.iter().all(|p| !p.failed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairRecord> {
        self.pairs.iter().filter(|p| p.failed())
    }
}

fn check_pairs(g: &dyn Graph, v: &VertexId, r_pairs: usize, radius: usize, stop_at_first: bool) -> Result<(BallView, Vec<PairRecord>)> {
    if r_pairs < 1 {
        return Err(Error::arg("r_pairs must be >= 1"));
    }
    if radius < r_pairs {
        return Err(Error::arg(format!("witness radius {radius} must be >= r_pairs {r_pairs}")));
    }
    let b = ball(g, v, r_pairs)?;
    let pairs = equidistant_pairs(&b, r_pairs);
    let records = pairs
        .par_iter()
        .enumerate()
        .map(|(index, &(a, c))| {
            let (u, w) = (&b.vertices[a], &b.vertices[c]);
            let proven_failure = twins(g, u, w)?;
            let (first_witness, witness_depths) = if proven_failure {
                (None, 0)
            } else {
                sphere_differences(g, u, w, radius, stop_at_first)?
            };
            Ok(PairRecord {
                index,
                u: u.clone(),
                w: w.clone(),
                depth: b.dist[a],
                first_witness,
                witness_depths,
                proven_failure,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((b, records))
}

/// Whether `u` and `w` have the same neighbors apart from each other.
pub fn twins(g: &dyn Graph, u: &VertexId, w: &VertexId) -> Result<bool> {
    let mut a: Vec<VertexId> = g.neighbors(u)?.into_iter().filter(|x| x != w).collect();
    let mut b: Vec<VertexId> = g.neighbors(w)?.into_iter().filter(|x| x != u).collect();
    a.sort_unstable();
    b.sort_unstable();
    Ok(a == b)
}

/// Checks the distinct-spheres condition at root `v` for all equidistant
/// pairs within `r_pairs`, looking for witnesses up to depth `radius`.
pub fn check_dsc(g: &dyn Graph, v: &VertexId, r_pairs: usize, radius: usize) -> Result<DscReport> {
    let (_, pairs) = check_pairs(g, v, r_pairs, radius, false)?;
    let mut bfs = Bfs::new(g, v)?;
    let mut ecc = 0;
    while bfs.depth() < radius {
        match bfs.advance() {
            Ok(layer) if !layer.is_empty() => ecc = bfs.depth(),
            Ok(_) | Err(Error::BudgetExceeded { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(DscReport { root: v.clone(), r_pairs, radius, eccentricity_lower_bound: ecc, pairs, one_sided: true })
}

/// Like [`check_dsc`] but stops each pair at its first witness, so the
/// per-pair count is at most one. Used as a cheap precondition on graphs
/// whose balls at `radius` are far beyond the vertex budget.
pub fn first_witnesses(g: &dyn Graph, v: &VertexId, r_pairs: usize, radius: usize) -> Result<Vec<PairRecord>> {
    Ok(check_pairs(g, v, r_pairs, radius, true)?.1)
}

/// Smallest `n <= radius` with `B_u(n) = B_w(n)`, if any.
pub fn ball_equivalent(g: &dyn Graph, u: &VertexId, w: &VertexId, radius: usize) -> Result<Option<usize>> {
    if u == w {
        g.neighbors(u)?;
        return Ok(Some(0));
    }
    let mut bu = Bfs::new(g, u)?;
    let mut bw = Bfs::new(g, w)?;
    let mut seen_u: HashSet<VertexId> = HashSet::from([u.clone()]);
    let mut seen_w: HashSet<VertexId> = HashSet::from([w.clone()]);
    // |B_u(n) Δ B_w(n)|
    let mut diff: usize = 2;
    for n in 1..=radius {
        for x in bu.advance()?.to_vec() {
            if seen_w.contains(&x) {
                diff -= 1;
            } else {
                diff += 1;
            }
            seen_u.insert(x);
        }
        for x in bw.advance()?.to_vec() {
            if seen_u.contains(&x) {
                diff -= 1;
            } else {
                diff += 1;
            }
            seen_w.insert(x);
        }
        if diff == 0 {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthProfile {
    pub root: VertexId,
    pub radius: usize,
    /// `|S_v(n)|` for `n = 0..=radius`.
    pub spheres: Vec<usize>,
    /// `|B_v(n)|` for `n = 0..=radius`.
    pub balls: Vec<usize>,
    /// `max_n |B_v(n+1)| / |B_v(n)|` over `n < radius`.
    pub ratio_bound: f64,
    pub ratio_argmax: usize,
}

impl GrowthProfile {
    /// `|B(n+1)| / |B(n)|` for `n < radius`.
    pub fn ratios(&self) -> Vec<f64> {
        self.balls.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect()
    }
}

pub fn growth_profile(g: &dyn Graph, v: &VertexId, radius: usize) -> Result<GrowthProfile> {
    growth_profile_within(g, v, radius, vertex_budget())
}

pub fn growth_profile_within(g: &dyn Graph, v: &VertexId, radius: usize, budget: usize) -> Result<GrowthProfile> {
    let mut bfs = Bfs::with_budget(g, v, budget)?;
    let mut spheres = vec![1];
    while bfs.depth() < radius {
        spheres.push(bfs.advance()?.len());
    }
    let balls: Vec<usize> = spheres
        .iter()
        .scan(0, |acc, &s| {
            *acc += s;
            Some(*acc)
        })
        .collect();
    // exact comparison of b[n+1]/b[n] as fractions
    let mut best = 0;
    for n in 1..radius {
        if (balls[n + 1] as u128) * (balls[best] as u128) > (balls[best + 1] as u128) * (balls[n] as u128) {
            best = n;
        }
    }
    let ratio_bound = if radius == 0 { 1.0 } else { balls[best + 1] as f64 / balls[best] as f64 };
    Ok(GrowthProfile { root: v.clone(), radius, spheres, balls, ratio_bound, ratio_argmax: best })
}

/// Depths `n <= radius` with `|S_v(n)| <= 2n(1 - eps)/3`.
pub fn sphere_condition_depths(profile: &GrowthProfile, eps: Ratio) -> Result<Vec<usize>> {
    let eps = eps.open_unit()?;
    Ok((0..=profile.radius)
        .filter(|&n| sphere_condition_holds(profile.spheres[n], n, eps))
        .collect())
}

pub(crate) fn sphere_condition_holds(sphere: usize, n: usize, eps: Ratio) -> bool {
    // 3 |S| den <= 2 n (den - num)
    3 * sphere as u128 * eps.den as u128 <= 2 * n as u128 * (eps.den - eps.num) as u128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{FamilySpec, TREE_ROOT};

    fn v(s: &str) -> VertexId {
        VertexId::new(s)
    }

    #[test]
    fn dsc_set_on_the_line() {
        let g = FamilySpec::BiinfinitePath.build().unwrap();
        let set = dsc_set(&*g, &v("1"), &v("-1"), 2).unwrap();
        let expect: BTreeMap<VertexId, Vec<usize>> = [
            ("1", vec![2]),
            ("-1", vec![2]),
            ("2", vec![1]),
            ("-2", vec![1]),
            ("3", vec![2]),
            ("-3", vec![2]),
        ]
        .into_iter()
        .map(|(k, d)| (v(k), d))
        .collect();
        assert_eq!(set, expect);
    }

    #[test]
    fn dsc_set_rejects_equal_vertices() {
        let g = FamilySpec::BiinfinitePath.build().unwrap();
        assert!(dsc_set(&*g, &v("1"), &v("1"), 2).is_err());
        assert!(dsc_set(&*g, &v("1"), &v("2"), 0).is_err());
    }

    #[test]
    fn twins_have_no_nontrivial_witness() {
        let g = FamilySpec::TwinLeafPath.build().unwrap();
        assert!(nontrivial_witnesses(&*g, &v("u"), &v("w"), 9).unwrap().is_empty());
        let literal = dsc_set(&*g, &v("u"), &v("w"), 9).unwrap();
        assert_eq!(literal.keys().map(|k| k.as_str()).collect::<Vec<_>>(), ["u", "w"]);
        assert_eq!(literal[&v("u")], vec![2]);
    }

    #[test]
    fn grid_neighbours_are_separated_at_depth_one() {
        let g = FamilySpec::Grid2d.build().unwrap();
        let set = dsc_set(&*g, &v("1,0"), &v("0,1"), 1).unwrap();
        assert_eq!(set.get(&v("2,0")), Some(&vec![1]));
    }

    #[test]
    fn twin_pair_fails_the_check() {
        let g = FamilySpec::TwinLeafPath.build().unwrap();
        let report = check_dsc(&*g, &v("0"), 1, 10).unwrap();
        let fails: Vec<_> = report.failures().collect();
        assert_eq!(fails.len(), 1);
        let pair = [fails[0].u.as_str(), fails[0].w.as_str()];
        assert!(pair.contains(&"u") && pair.contains(&"w"));
        assert!(fails[0].proven_failure);
        assert!(report.one_sided);
    }

    #[test]
    fn tree_pairs_all_witnessed() {
        let g = FamilySpec::regular_tree(3).build().unwrap();
        let report = check_dsc(&*g, &v(TREE_ROOT), 3, 8).unwrap();
        assert_eq!(report.pairs.len(), 3 + 15 + 66);
        assert!(report.all_witnessed());
        assert_eq!(report.eccentricity_lower_bound, 8);
    }

    #[test]
    fn check_rejects_bad_radii() {
        let g = FamilySpec::Grid2d.build().unwrap();
        assert!(check_dsc(&*g, &v("0,0"), 0, 4).is_err());
        assert!(check_dsc(&*g, &v("0,0"), 4, 3).is_err());
    }

    #[test]
    fn ball_equivalence_examples() {
        let twins = FamilySpec::TwinLeafPath.build().unwrap();
        assert_eq!(ball_equivalent(&*twins, &v("u"), &v("w"), 5).unwrap(), Some(2));
        assert_eq!(ball_equivalent(&*twins, &v("3"), &v("3"), 5).unwrap(), Some(0));
        let line = FamilySpec::BiinfinitePath.build().unwrap();
        assert_eq!(ball_equivalent(&*line, &v("0"), &v("1"), 30).unwrap(), None);
    }

    #[test]
    fn growth_profiles() {
        let line = FamilySpec::BiinfinitePath.build().unwrap();
        let p = growth_profile(&*line, &v("0"), 10).unwrap();
        assert!(p.spheres[1..].iter().all(|&s| s == 2));
        assert_eq!((p.ratio_bound, p.ratio_argmax), (3.0, 0));

        let grid = FamilySpec::Grid2d.build().unwrap();
        let p = growth_profile(&*grid, &v("0,0"), 10).unwrap();
        assert!((1..=10).all(|n| p.spheres[n] == 4 * n));

        let tree = FamilySpec::regular_tree(3).build().unwrap();
        let p = growth_profile(&*tree, &v(TREE_ROOT), 10).unwrap();
        assert!((1..=10).all(|n| p.spheres[n] == 3 << (n - 1)));
        assert_eq!((p.ratio_bound, p.ratio_argmax), (4.0, 0));
    }

    #[test]
    fn sphere_condition_examples() {
        let eps = Ratio::new(1, 4).unwrap();
        let line = FamilySpec::BiinfinitePath.build().unwrap();
        let p = growth_profile(&*line, &v("0"), 12).unwrap();
        assert_eq!(sphere_condition_depths(&p, eps).unwrap(), (4..=12).collect::<Vec<_>>());
        let grid = FamilySpec::Grid2d.build().unwrap();
        let p = growth_profile(&*grid, &v("0,0"), 10).unwrap();
        assert!(sphere_condition_depths(&p, eps).unwrap().is_empty());
        assert!(sphere_condition_depths(&p, Ratio::new(1, 1).unwrap()).is_err());
    }
}
