//! Run configuration: a flat `key=value` file, overridden by command-line
//! flags.
//!
//! ```text
//! # three-regular tree, relaxed witnesses
//! family=regular_tree
//! d=3
//! radius=40
//! strategy=dsc-relaxed
//! ```
//!
//! Family parameters may be written bare (`d=3`) or prefixed (`param.d=3`).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::coloring::{RandomSchedule, Strategy, DEFAULT_MARGIN};
use crate::error::{Error, Result};
use crate::generators::FamilySpec;
use crate::graph::{GraphHandle, VertexId};
use crate::rational::Ratio;

/// Keys read as family parameters when written without `param.`.
const FAMILY_KEYS: [&str; 5] = ["d", "left", "right", "n", "edges"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub family: Option<String>,
    pub params: BTreeMap<String, String>,
    /// Defaults to the family's canonical root.
    pub root: Option<String>,
    /// Construction radius `R`.
    pub radius: usize,
    pub r_pairs: usize,
    pub r_inner: usize,
    /// Defaults to the construction radius.
    pub r_outer: Option<usize>,
    pub strategy: Strategy,
    pub epsilon: Ratio,
    /// Schedule form, e.g. `harmonic`, `power:0.5`; the seed is separate.
    pub schedule: String,
    pub seed: Option<u64>,
    pub trials: usize,
    pub gap: usize,
    pub margin: usize,
    pub out: PathBuf,
    /// Vertex budget; unset means the environment or the built-in default.
    pub budget: Option<usize>,
    /// Cap on automorphism group sizes.
    pub cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: None,
            params: BTreeMap::new(),
            root: None,
            radius: 10,
            r_pairs: 2,
            r_inner: 2,
            r_outer: None,
            strategy: Strategy::DscRelaxed,
            epsilon: Ratio { num: 1, den: 4 },
            schedule: "harmonic".to_string(),
            seed: None,
            trials: 100,
            gap: 2,
            margin: DEFAULT_MARGIN,
            out: PathBuf::from("out"),
            budget: None,
            cap: crate::automorphism::DEFAULT_SEARCH_CAP,
        }
    }
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| Error::Config(format!("{key}: expected a non-negative integer, got {value:?}")))
}

impl RunConfig {
    /// Sets one key. Unknown keys are errors, so typos do not pass silently.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim();
        let value = value.trim();
        match key {
            "family" => self.family = Some(value.to_string()),
            "root" => self.root = Some(value.to_string()),
            "radius" | "R" => self.radius = number(key, value)?,
            "r_pairs" | "r-pairs" => self.r_pairs = number(key, value)?,
            "r_inner" | "r-inner" => self.r_inner = number(key, value)?,
            "r_outer" | "r-outer" => self.r_outer = Some(number(key, value)?),
            "strategy" => self.strategy = value.parse().map_err(|e: Error| Error::Config(e.to_string()))?,
            "epsilon" => self.epsilon = value.parse().map_err(|e: Error| Error::Config(e.to_string()))?,
            "schedule" => {
                value.parse::<RandomSchedule>().map_err(|e| Error::Config(e.to_string()))?;
                self.schedule = value.to_string();
            }
            "seed" => self.seed = Some(number(key, value)?),
            "trials" => self.trials = number(key, value)?,
            "gap" => self.gap = number(key, value)?,
            "margin" => self.margin = number(key, value)?,
            "out" => self.out = PathBuf::from(value),
            "budget" => self.budget = Some(number(key, value)?),
            "cap" => self.cap = number(key, value)?,
            k if FAMILY_KEYS.contains(&k) => {
                self.params.insert(k.to_string(), value.to_string());
            }
            k => match k.strip_prefix("param.") {
                Some(p) if !p.is_empty() => {
                    self.params.insert(p.to_string(), value.to_string());
                }
                _ => return Err(Error::Config(format!("unknown key {k:?}"))),
            },
        }
        Ok(())
    }

    /// Applies a `key=value` assignment.
    pub fn set_pair(&mut self, pair: &str) -> Result<()> {
        let (k, v) = pair.split_once('=').ok_or_else(|| Error::Config(format!("expected key=value, got {pair:?}")))?;
        self.set(k, v)
    }

    /// Applies every assignment of a config text on top of `self`. Blank
    /// lines and `#` comments are skipped; several assignments may share a
    /// line when separated by whitespace.
    pub fn merge_str(&mut self, text: &str) -> Result<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            for pair in line.split_whitespace() {
                self.set_pair(pair).map_err(|e| Error::Config(format!("line {}: {e}", no + 1)))?;
            }
        }
        Ok(())
    }

    pub fn merge_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        self.merge_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn r_outer(&self) -> usize {
        self.r_outer.unwrap_or(self.radius)
    }

    /// Radii orderings shared by all commands: `r_pairs <= R` and
    /// `r_inner <= r_outer <= R`.
    pub fn validate(&self) -> Result<()> {
        if self.r_pairs > self.radius {
            return Err(Error::Config(format!("r_pairs {} exceeds radius {}", self.r_pairs, self.radius)));
        }
        if self.r_outer() > self.radius {
            return Err(Error::Config(format!("r_outer {} exceeds radius {}", self.r_outer(), self.radius)));
        }
        if self.r_inner > self.r_outer() {
            return Err(Error::Config(format!("r_inner {} exceeds r_outer {}", self.r_inner, self.r_outer())));
        }
        if self.gap < 1 {
            return Err(Error::Config("gap must be >= 1".to_string()));
        }
        if self.cap < 1 {
            return Err(Error::Config("cap must be >= 1".to_string()));
        }
        Ok(())
    }

    pub fn family_spec(&self) -> Result<FamilySpec> {
        let family = self.family.as_deref().ok_or_else(|| Error::Config("no family given".to_string()))?;
        if family.contains('(') {
            if !self.params.is_empty() {
                return Err(Error::Config("family parameters given twice".to_string()));
            }
            family.parse()
        } else {
            FamilySpec::from_params(family, &self.params)
        }
    }

    pub fn build_graph(&self) -> Result<GraphHandle> {
        self.family_spec()?.build()
    }

    /// The configured root, checked against the graph, or the family's
    /// canonical root.
    pub fn root_in(&self, g: &GraphHandle) -> Result<VertexId> {
        let v = match &self.root {
            Some(r) => VertexId::new(r),
            None => g
                .default_root()
                .ok_or_else(|| Error::Config(format!("family {} has no default root; pass root=", g.family())))?,
        };
        g.neighbors(&v)?;
        Ok(v)
    }

    /// The random schedule with the master seed, which must be set.
    pub fn random_schedule(&self) -> Result<RandomSchedule> {
        let seed = self.seed.ok_or_else(|| Error::Config("random runs need an explicit seed".to_string()))?;
        let mut s: RandomSchedule = self.schedule.parse()?;
        s.seed = seed;
        s.validate()?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut c = RunConfig::default();
        c.merge_str("# tree\nfamily=regular_tree\nd=3 radius=40\n\nstrategy=dsc  # relaxed is default\n").unwrap();
        c.set_pair("radius=12").unwrap();
        assert_eq!(c.radius, 12);
        assert_eq!(c.strategy, Strategy::Dsc);
        assert_eq!(c.family_spec().unwrap(), FamilySpec::regular_tree(3));
        assert_eq!(c.r_outer(), 12);
        let g = c.build_graph().unwrap();
        assert_eq!(c.root_in(&g).unwrap().as_str(), "ε");
    }

    #[test]
    fn compact_family_and_prefixed_params() {
        let mut c = RunConfig::default();
        c.set_pair("family=cartesian_product").unwrap();
        c.set_pair("param.left=biinfinite_path").unwrap();
        c.set_pair("param.right=grid2d").unwrap();
        assert_eq!(c.family_spec().unwrap().to_string(), "cartesian_product(biinfinite_path,grid2d)");
        let mut c = RunConfig::default();
        c.set_pair("family=regular_tree(4)").unwrap();
        assert_eq!(c.family_spec().unwrap(), FamilySpec::regular_tree(4));
    }

    #[test]
    fn rejects_bad_input() {
        let mut c = RunConfig::default();
        assert!(c.set_pair("radiu=3").is_err());
        assert!(c.set_pair("radius=-3").is_err());
        assert!(c.set_pair("strategy=greedy").is_err());
        assert!(c.merge_str("family=grid2d\nnonsense\n").is_err());
        c.set_pair("r_inner=11").unwrap();
        assert!(c.validate().is_err());
        c.set_pair("r_inner=2").unwrap();
        c.set_pair("r_outer=11").unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn seed_is_required_for_random() {
        let mut c = RunConfig::default();
        assert!(c.random_schedule().is_err());
        c.set_pair("seed=7").unwrap();
        c.set_pair("schedule=power:0.5").unwrap();
        assert_eq!(c.random_schedule().unwrap().seed, 7);
    }
}
