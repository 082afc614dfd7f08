//! Blue-density curves around a root and the numerical transfer of a
//! density bound from one root to another under bounded growth ratios.

use serde::Serialize;

use super::Coloring;
use crate::dsc::GrowthProfile;
use crate::error::{Error, Result};
use crate::graph::{ball, distance, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityPoint {
    pub n: usize,
    pub blue_count: usize,
    pub ball_count: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityCurve {
    pub root: VertexId,
    pub radius: usize,
    /// One point per `n = 0..=radius`.
    pub points: Vec<DensityPoint>,
}

impl DensityCurve {
    pub fn at(&self, n: usize) -> Option<&DensityPoint> {
        self.points.get(n)
    }
}

/// Exact counts of `B_root(n) ∩ Blue` for `n <= radius`. The ball around
/// `root` must stay inside the construction ball, so nothing is
/// extrapolated.
pub fn density_profile(c: &Coloring, root: &VertexId, radius: usize) -> Result<DensityCurve> {
    let g = &**c.graph();
    let offset = distance(g, &c.root, root, c.radius)?.ok_or(Error::BeyondRadius {
        requested: radius.saturating_add(c.radius).saturating_add(1),
        available: c.radius,
    })?;
    if radius + offset > c.radius {
        return Err(Error::BeyondRadius { requested: radius + offset, available: c.radius });
    }
    let b = ball(g, root, radius)?;
    let mut blue_at = vec![0usize; radius + 1];
    for (i, x) in b.vertices.iter().enumerate() {
        if c.is_blue(x) {
            blue_at[b.dist[i]] += 1;
        }
    }
    let sizes = b.sphere_sizes();
    let mut points = Vec::with_capacity(radius + 1);
    let (mut blue, mut total) = (0, 0);
    for n in 0..=radius {
        blue += blue_at[n];
        total += sizes.get(n).copied().unwrap_or(0);
        points.push(DensityPoint { n, blue_count: blue, ball_count: total, ratio: blue as f64 / total as f64 });
    }
    Ok(DensityCurve { root: root.clone(), radius, points })
}

/// Finite-sample stand-ins for the root-free densities: the largest and
/// smallest ratio `|B_x(radius) ∩ Blue| / |B_x(radius)|` over the sampled
/// roots. They bound nothing about unsampled roots or larger radii.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampledDensity {
    pub radius: usize,
    pub per_root: Vec<(VertexId, f64)>,
    pub max: f64,
    pub min: f64,
    pub finite_sample: bool,
}

pub fn sampled_density(c: &Coloring, roots: &[VertexId], radius: usize) -> Result<SampledDensity> {
    if roots.is_empty() {
        return Err(Error::arg("no roots sampled"));
    }
    let mut per_root = Vec::with_capacity(roots.len());
    for x in roots {
        let curve = density_profile(c, x, radius)?;
        per_root.push((x.clone(), curve.points[radius].ratio));
    }
    let max = per_root.iter().map(|p| p.1).fold(f64::MIN, f64::max);
    let min = per_root.iter().map(|p| p.1).fold(f64::MAX, f64::min);
    Ok(SampledDensity { radius, per_root, max, min, finite_sample: true })
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferPoint {
    pub n: usize,
    pub blue_x: usize,
    pub ball_x: usize,
    /// `|B_v(n + d) ∩ Blue|` and `|B_v(n + d)|`.
    pub blue_v: usize,
    pub ball_v: usize,
    pub ratio_x: f64,
    /// `ratio_v(n + d) / k`, the bound the chain yields for `ratio_x`.
    pub ratio_bound: f64,
    /// `|B_x(n) ∩ Blue| <= |B_v(n + d) ∩ Blue|`
    pub blue_ok: bool,
    /// `|B_x(n)| >= k |B_v(n + d)|`
    pub size_ok: bool,
    /// The strict form `|B_x(n)| > k |B_v(n + d)|`.
    pub size_strict: bool,
    /// Ball-size comparison between `x` and `w`, when `n` is within the
    /// growth profile.
    pub comparison_ok: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub v: VertexId,
    pub w: VertexId,
    pub x: VertexId,
    /// Measured `max_n |B_w(n+1)| / |B_w(n)|`.
    pub c: f64,
    pub d_wx: usize,
    pub d_vx: usize,
    pub d_wv: usize,
    /// `c^-(d(w,x) + d(v,x) + d(w,v))`
    pub k: f64,
    pub points: Vec<TransferPoint>,
    /// Failures of `blue_ok` or `size_ok`.
    pub violations: usize,
    /// Points where only the strict size inequality fails.
    pub strict_failures: usize,
    pub comparison_violations: usize,
    /// False when the truncation gives no evidence that the growth ratios
    /// are bounded: the largest ratio sits at the last step, or the last
    /// three ratios strictly increase.
    pub claimed: bool,
}

/// Evaluates the transfer chain at `x` for `n` with `n + d(v,x)` within
/// the density curve around `v`. `profile` is the growth profile at `w`.
pub fn growth_ratio_transfer(
    c: &Coloring,
    profile: &GrowthProfile,
    curve: &DensityCurve,
    x: &VertexId,
) -> Result<TransferReport> {
    let g = &**c.graph();
    let v = &curve.root;
    let w = &profile.root;
    let reach = c.radius + curve.radius + profile.radius;
    let dist = |a: &VertexId, b: &VertexId| -> Result<usize> {
        distance(g, a, b, reach)?.ok_or(Error::BeyondRadius { requested: reach + 1, available: c.radius })
    };
    let d_vx = dist(v, x)?;
    let d_wx = dist(w, x)?;
    let d_wv = dist(w, v)?;
    if d_vx > curve.radius {
        return Err(Error::BeyondRadius { requested: d_vx, available: curve.radius });
    }
    let cc = profile.ratio_bound;
    let k = cc.powi(-((d_wx + d_vx + d_wv) as i32));
    let top = curve.radius - d_vx;
    let bx = ball(g, x, top)?;
    let sizes = bx.sphere_sizes();
    let mut blue_at = vec![0usize; top + 1];
    for (i, y) in bx.vertices.iter().enumerate() {
        if c.is_blue(y) {
            blue_at[bx.dist[i]] += 1;
        }
    }
    let mut points = Vec::with_capacity(top + 1);
    let (mut blue_x, mut ball_x) = (0, 0);
    for n in 0..=top {
        blue_x += blue_at[n];
        ball_x += sizes.get(n).copied().unwrap_or(0);
        let at_v = curve.points[n + d_vx];
        let comparison_ok = profile.balls.get(n).map(|&bw| {
            let f = cc.powi(d_wx as i32);
            let bw = bw as f64;
            bw / f <= ball_x as f64 * (1.0 + 1e-12) && ball_x as f64 <= bw * f * (1.0 + 1e-12)
        });
        points.push(TransferPoint {
            n,
            blue_x,
            ball_x,
            blue_v: at_v.blue_count,
            ball_v: at_v.ball_count,
            ratio_x: blue_x as f64 / ball_x as f64,
            ratio_bound: at_v.ratio / k,
            blue_ok: blue_x <= at_v.blue_count,
            size_ok: ball_x as f64 >= k * at_v.ball_count as f64,
            size_strict: ball_x as f64 > k * at_v.ball_count as f64,
            comparison_ok,
        });
    }
    let ratios = profile.ratios();
    let rising = ratios.len() >= 3 && ratios[ratios.len() - 3..].windows(2).all(|w| w[1] > w[0]);
    let violations = points.iter().filter(|p| !p.blue_ok || !p.size_ok).count();
    let strict_failures = points.iter().filter(|p| p.size_ok && !p.size_strict).count();
    let comparison_violations = points.iter().filter(|p| p.comparison_ok == Some(false)).count();
    Ok(TransferReport {
        v: v.clone(),
        w: w.clone(),
        x: x.clone(),
        c: cc,
        d_wx,
        d_vx,
        d_wv,
        k,
        points,
        violations,
        strict_failures,
        comparison_violations,
        claimed: profile.radius >= 2 && profile.ratio_argmax + 1 < profile.radius && !rising,
    })
}
