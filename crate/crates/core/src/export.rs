//! File formats: DOT and JSON for balls, CSV for curves, and atomic writes.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::coloring::{Coloring, DensityCurve, MonteCarloReport};
use crate::dsc::GrowthProfile;
use crate::error::{Error, Result};
use crate::graph::BallView;

/// Undirected DOT for the induced ball. With a coloring, every node gets
/// a fill color.
pub fn ball_to_dot(b: &BallView, coloring: Option<&Coloring>) -> String {
    let mut out = String::new();
    out.push_str("graph ball {\n");
    out.push_str(&format!("  // root {} radius {}\n", b.root, b.radius));
    for (i, v) in b.vertices.iter().enumerate() {
        let id = quote(v.as_str());
        match coloring {
            Some(c) => {
                let color = if c.is_blue(v) { "blue" } else { "red" };
                out.push_str(&format!("  {id} [dist={}, style=filled, fillcolor={color}];\n", b.dist[i]));
            }
            None => out.push_str(&format!("  {id} [dist={}];\n", b.dist[i])),
        }
    }
    for (a, c) in b.edges() {
        out.push_str(&format!("  {} -- {};\n", quote(b.vertices[a].as_str()), quote(b.vertices[c].as_str())));
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[derive(Serialize)]
struct BallVertex<'a> {
    id: &'a str,
    dist: usize,
    /// Neighbors outside the ball.
    boundary_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    blue: Option<bool>,
}

#[derive(Serialize)]
struct BallFile<'a> {
    root: &'a str,
    radius: usize,
    vertex_count: usize,
    edge_count: usize,
    vertices: Vec<BallVertex<'a>>,
    edges: Vec<(usize, usize)>,
}

pub fn ball_to_json(b: &BallView, coloring: Option<&Coloring>) -> Result<String> {
    let edges = b.edges();
    let file = BallFile {
        root: b.root.as_str(),
        radius: b.radius,
        vertex_count: b.len(),
        edge_count: edges.len(),
        vertices: b
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| BallVertex {
                id: v.as_str(),
                dist: b.dist[i],
                boundary_degree: b.boundary_degree[i],
                blue: coloring.map(|c| c.is_blue(v)),
            })
            .collect(),
        edges,
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Error::Config(format!("csv: {e}"));
    w.write_record(header).map_err(fail)?;
    for r in rows {
        w.write_record(&r).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Columns `n, sphere, ball, ratio` with `ratio = |B(n)| / |B(n-1)|`
/// (empty at `n = 0`).
pub fn growth_csv(p: &GrowthProfile) -> Result<String> {
    csv_string(
        &["n", "sphere", "ball", "ratio"],
        (0..=p.radius).map(|n| {
            let ratio = if n == 0 { String::new() } else { (p.balls[n] as f64 / p.balls[n - 1] as f64).to_string() };
            vec![n.to_string(), p.spheres[n].to_string(), p.balls[n].to_string(), ratio]
        }),
    )
}

/// Columns `n, blue_count, ball_count, ratio`.
pub fn density_csv(c: &DensityCurve) -> Result<String> {
    csv_string(
        &["n", "blue_count", "ball_count", "ratio"],
        c.points.iter().map(|p| {
            vec![p.n.to_string(), p.blue_count.to_string(), p.ball_count.to_string(), p.ratio.to_string()]
        }),
    )
}

/// Columns `n, mean_density`.
pub fn montecarlo_density_csv(r: &MonteCarloReport) -> Result<String> {
    csv_string(
        &["n", "mean_density"],
        r.mean_density.iter().enumerate().map(|(n, x)| vec![n.to_string(), x.to_string()]),
    )
}

/// Columns `trial, seed, blue_count, pass`.
pub fn montecarlo_trials_csv(r: &MonteCarloReport) -> Result<String> {
    csv_string(
        &["trial", "seed", "blue_count", "pass"],
        r.records.iter().map(|t| vec![t.trial.to_string(), t.seed.to_string(), t.blue_count.to_string(), t.pass.to_string()]),
    )
}

/// Writes through a temporary file in the same directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: impl AsRef<Path>, contents: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| Error::io(path, e))?;
    tmp.flush().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::density_profile;
    use crate::dsc::growth_profile;
    use crate::generators::FamilySpec;
    use crate::graph::ball;

    #[test]
    fn dot_for_a_colored_path() {
        let g = FamilySpec::BiinfinitePath.build().unwrap();
        let b = ball(&*g, &"0".into(), 5).unwrap();
        let c = Coloring::explicit(g, "0".into(), 5, ["2".into()]).unwrap();
        let dot = ball_to_dot(&b, Some(&c));
        assert_eq!(dot.matches("fillcolor=").count(), 11);
        assert_eq!(dot.matches("fillcolor=blue").count(), 1);
        assert_eq!(dot.matches(" -- ").count(), 10);
    }

    #[test]
    fn csv_headers() {
        let g = FamilySpec::Grid2d.build().unwrap();
        let p = growth_profile(&*g, &"0,0".into(), 3).unwrap();
        let s = growth_csv(&p).unwrap();
        assert!(s.starts_with("n,sphere,ball,ratio\n0,1,1,\n1,4,5,5\n"));
        let c = Coloring::explicit(g, "0,0".into(), 3, []).unwrap();
        let d = density_csv(&density_profile(&c, &"0,0".into(), 3).unwrap()).unwrap();
        assert_eq!(d.lines().count(), 5);
        assert!(d.starts_with("n,blue_count,ball_count,ratio\n"));
    }

    #[test]
    fn atomic_write_replaces_contents() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sub").join("x.json");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }
}
