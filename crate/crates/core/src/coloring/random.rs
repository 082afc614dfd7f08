//! Random sphere colorings: a vertex at distance `n` from the root is
//! blue with probability `p_n`, decided by a hash of (seed, vertex).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};

use super::verify::{check_radii, verify_ball, VerifyOptions};
use super::{Coloring, Metadata, Strategy};
use crate::error::{Error, Result};
use crate::graph::{ball, GraphHandle, VertexId};

/// Closed forms for `p_n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ScheduleForm {
    Zero,
    /// Only `p = 0` passes validation; any positive constant fails to vanish.
    Constant { p: f64 },
    /// `min(1, scale / (n + 1))`
    Harmonic { scale: f64 },
    /// `(n + 1)^(-alpha)`
    Power { alpha: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomSchedule {
    pub form: ScheduleForm,
    pub seed: u64,
}

impl Default for RandomSchedule {
    fn default() -> Self {
        RandomSchedule { form: ScheduleForm::Harmonic { scale: 1.0 }, seed: 0 }
    }
}

impl RandomSchedule {
    pub fn new(form: ScheduleForm, seed: u64) -> Self {
        RandomSchedule { form, seed }
    }

    pub fn harmonic(seed: u64) -> Self {
        RandomSchedule::new(ScheduleForm::Harmonic { scale: 1.0 }, seed)
    }

    pub fn p(&self, n: usize) -> f64 {
        let m = (n + 1) as f64;
        match self.form {
            ScheduleForm::Zero => 0.0,
            ScheduleForm::Constant { p } => p,
            ScheduleForm::Harmonic { scale } => (scale / m).min(1.0),
            ScheduleForm::Power { alpha } => m.powf(-alpha),
        }
    }

    /// Checks `p_n` in `[0, 1]`, non-increasing and vanishing; the built-in
    /// forms with positive terms also have divergent partial sums.
    pub fn validate(&self) -> Result<()> {
        match self.form {
            ScheduleForm::Zero => Ok(()),
            ScheduleForm::Constant { p } if p == 0.0 => Ok(()),
            ScheduleForm::Constant { p } => {
                Err(Error::Schedule(format!("constant probability {p} does not tend to 0")))
            }
            ScheduleForm::Harmonic { scale } if scale.is_finite() && scale > 0.0 => Ok(()),
            ScheduleForm::Harmonic { scale } => Err(Error::Schedule(format!("harmonic scale {scale} must be > 0"))),
            ScheduleForm::Power { alpha } if alpha > 0.0 && alpha <= 1.0 => Ok(()),
            ScheduleForm::Power { alpha } => {
                Err(Error::Schedule(format!("exponent {alpha} must lie in (0, 1] for a divergent sum")))
            }
        }
    }
}

/// Textual form without the seed: `zero`, `const:p`, `harmonic[:a]`,
/// `power:alpha`.
impl fmt::Display for RandomSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.form {
            ScheduleForm::Zero => write!(f, "zero"),
            ScheduleForm::Constant { p } => write!(f, "const:{p}"),
            ScheduleForm::Harmonic { scale } if scale == 1.0 => write!(f, "harmonic"),
            ScheduleForm::Harmonic { scale } => write!(f, "harmonic:{scale}"),
            ScheduleForm::Power { alpha } => write!(f, "power:{alpha}"),
        }
    }
}

impl FromStr for RandomSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let num = |a: Option<&str>| -> Result<f64> {
            let a = a.ok_or_else(|| Error::Schedule(format!("{name} needs a parameter")))?;
            a.parse::<f64>().map_err(|_| Error::Schedule(format!("bad number {a:?}")))
        };
        let form = match name {
            "zero" => ScheduleForm::Zero,
            "const" => ScheduleForm::Constant { p: num(arg)? },
            "harmonic" => ScheduleForm::Harmonic { scale: if arg.is_some() { num(arg)? } else { 1.0 } },
            "power" => ScheduleForm::Power { alpha: num(arg)? },
            _ => return Err(Error::Schedule(format!("unknown schedule {s:?}"))),
        };
        let out = RandomSchedule { form, seed: 0 };
        out.validate()?;
        Ok(out)
    }
}

/// Uniform value in `[0, 1)` from the first 53 bits of
/// `sha256(seed_le || encoding)`.
pub fn uniform_for(seed: u64, v: &VertexId) -> f64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(v.as_str().as_bytes());
    let digest = h.finalize();
    let mut word = [0u8; 8];
    word.copy_from_slice(&digest[..8]);
    (u64::from_le_bytes(word) >> 11) as f64 / (1u64 << 53) as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomMetadata {
    pub schedule: String,
    pub seed: u64,
    /// `sum_n |S_v(n)| p_n` over the construction ball.
    pub expected_blue: f64,
    pub variance_blue: f64,
}

pub fn random_coloring(g: &GraphHandle, v: &VertexId, radius: usize, s: &RandomSchedule) -> Result<Coloring> {
    s.validate()?;
    let b = ball(&**g, v, radius)?;
    let blue = (0..b.len())
        .filter(|&i| uniform_for(s.seed, &b.vertices[i]) < s.p(b.dist[i]))
        .map(|i| b.vertices[i].clone())
        .collect();
    let (mut mean, mut var) = (0.0, 0.0);
    for (n, &size) in b.sphere_sizes().iter().enumerate() {
        let p = s.p(n);
        mean += size as f64 * p;
        var += size as f64 * p * (1.0 - p);
    }
    let mut parameters = BTreeMap::new();
    parameters.insert("schedule".to_string(), json!(s.to_string()));
    parameters.insert("seed".to_string(), json!(s.seed));
    let meta = RandomMetadata { schedule: s.to_string(), seed: s.seed, expected_blue: mean, variance_blue: var };
    Ok(Coloring::assemble(
        g.clone(),
        v.clone(),
        radius,
        Strategy::Random,
        parameters,
        Vec::new(),
        blue,
        Metadata::Random(meta),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub blue_count: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonteCarloReport {
    pub root: VertexId,
    pub r_outer: usize,
    pub r_inner: usize,
    pub schedule: String,
    pub master_seed: u64,
    pub trials: usize,
    pub passes: usize,
    pub estimate: f64,
    /// Mean of `|B_v(n) ∩ Blue| / |B_v(n)|` over trials, `n = 0..=r_outer`.
    pub mean_density: Vec<f64>,
    pub records: Vec<TrialRecord>,
}

/// Fraction of random colorings that pass the ball verification. Trial
/// seeds are drawn from a ChaCha8 stream keyed by the master seed.
pub fn monte_carlo_distinguishing(
    g: &GraphHandle,
    v: &VertexId,
    r_outer: usize,
    r_inner: usize,
    s: &RandomSchedule,
    trials: usize,
) -> Result<MonteCarloReport> {
    if trials < 1 {
        return Err(Error::arg("trials must be >= 1"));
    }
    s.validate()?;
    check_radii(r_outer, r_inner, VerifyOptions::default().margin)?;
    let b = ball(&**g, v, r_outer)?;
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let seeds: Vec<u64> = (0..trials).map(|_| rng.next_u64()).collect();
    let balls: Vec<usize> = (0..=r_outer).map(|n| b.ball_size(n)).collect();
    let outcomes = seeds
        .par_iter()
        .enumerate()
        .map(|(trial, &seed)| {
            let blue: Vec<usize> =
                (0..b.len()).filter(|&i| uniform_for(seed, &b.vertices[i]) < s.p(b.dist[i])).collect();
            let mut per_depth = vec![0usize; r_outer + 1];
            for &i in &blue {
                per_depth[b.dist[i]] += 1;
            }
            let pass = verify_ball(&b, &blue, r_inner, 0, None)?.pass();
            Ok((TrialRecord { trial, seed, blue_count: blue.len(), pass }, per_depth))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut mean_density = vec![0.0; r_outer + 1];
    for (_, per_depth) in &outcomes {
        let mut acc = 0;
        for n in 0..=r_outer {
            acc += per_depth[n];
            mean_density[n] += acc as f64 / balls[n] as f64;
        }
    }
    for x in &mut mean_density {
        *x /= trials as f64;
    }
    let records: Vec<TrialRecord> = outcomes.into_iter().map(|(r, _)| r).collect();
    let passes = records.iter().filter(|r| r.pass).count();
    Ok(MonteCarloReport {
        root: v.clone(),
        r_outer,
        r_inner,
        schedule: s.to_string(),
        master_seed: s.seed,
        trials,
        passes,
        estimate: passes as f64 / trials as f64,
        mean_density,
        records,
    })
}
