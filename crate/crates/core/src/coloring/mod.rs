//! Two-colorings of infinite graphs, stored as the blue set inside a
//! construction ball, together with their constructions, density
//! profiles and truncation-level verification.

mod density;
mod deterministic;
mod motion;
mod random;
mod verify;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::generators::FamilySpec;
use crate::graph::{ball, distance, BallView, GraphHandle, VertexId};

pub use density::{
    density_profile, growth_ratio_transfer, sampled_density, DensityCurve, DensityPoint, SampledDensity, TransferPoint,
    TransferReport,
};
pub use deterministic::{dsc_coloring, dsc_coloring_relaxed, DscMetadata, WitnessRecord, WitnessSchedule};
pub use motion::{motion_growth_coloring, motion_growth_coloring_with, LevelRecord, MotionMetadata, DEFAULT_MARGIN};
pub use random::{
    monte_carlo_distinguishing, random_coloring, uniform_for, MonteCarloReport, RandomMetadata, RandomSchedule,
    ScheduleForm, TrialRecord,
};
pub use verify::{verify_distinguishing, verify_distinguishing_with, ListedAutomorphism, VerificationReport, VerifyOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Dsc,
    DscRelaxed,
    Random,
    MotionGrowth,
    /// A blue set given directly.
    Explicit,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Dsc => "dsc",
            Strategy::DscRelaxed => "dsc-relaxed",
            Strategy::Random => "random",
            Strategy::MotionGrowth => "motion-growth",
            Strategy::Explicit => "explicit",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "dsc" => Strategy::Dsc,
            "dsc-relaxed" => Strategy::DscRelaxed,
            "random" => Strategy::Random,
            "motion-growth" => Strategy::MotionGrowth,
            "explicit" => Strategy::Explicit,
            other => return Err(Error::arg(format!("unknown strategy {other:?}"))),
        })
    }
}

/// Above this many blue vertices, membership is checked against the
/// materialized ball instead of one distance query per vertex.
const EXPLICIT_PROBE_LIMIT: usize = 64;

/// Construction trace, specific to the strategy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Metadata {
    None,
    Dsc(DscMetadata),
    Random(RandomMetadata),
    MotionGrowth(MotionMetadata),
}

/// A 2-coloring known on `B_root(radius)`: the listed vertices are blue,
/// every other vertex of the ball is red.
#[derive(Clone)]
pub struct Coloring {
    graph: GraphHandle,
    pub root: VertexId,
    pub radius: usize,
    pub strategy: Strategy,
    /// Construction inputs; enough to replay the construction.
    pub parameters: BTreeMap<String, Value>,
    pub anchor: Vec<VertexId>,
    pub blue: BTreeSet<VertexId>,
    pub metadata: Metadata,
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coloring")
            .field("family", &self.graph.family())
            .field("root", &self.root)
            .field("radius", &self.radius)
            .field("strategy", &self.strategy)
            .field("blue", &self.blue.len())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct ColoringFile {
    family: String,
    root: VertexId,
    radius: usize,
    strategy: Strategy,
    parameters: BTreeMap<String, Value>,
    anchor: Vec<VertexId>,
    blue: Vec<VertexId>,
    metadata: Metadata,
}

impl Coloring {
    pub(crate) fn assemble(
        graph: GraphHandle,
        root: VertexId,
        radius: usize,
        strategy: Strategy,
        parameters: BTreeMap<String, Value>,
        anchor: Vec<VertexId>,
        blue: BTreeSet<VertexId>,
        metadata: Metadata,
    ) -> Self {
        Coloring { graph, root, radius, strategy, parameters, anchor, blue, metadata }
    }

    /// A coloring with the given blue set, which must lie in `B_root(radius)`.
    pub fn explicit(
        graph: GraphHandle,
        root: VertexId,
        radius: usize,
        blue: impl IntoIterator<Item = VertexId>,
    ) -> Result<Self> {
        graph.neighbors(&root)?;
        let blue: BTreeSet<VertexId> = blue.into_iter().collect();
        let outside = |x: &VertexId| Error::arg(format!("blue vertex {x} lies outside B_{root}({radius})"));
        if blue.len() > EXPLICIT_PROBE_LIMIT {
            let b = ball(&*graph, &root, radius)?;
            if let Some(x) = blue.iter().find(|x| !b.contains(x)) {
                return Err(outside(x));
            }
        } else {
            for x in &blue {
                if distance(&*graph, &root, x, radius)?.is_none() {
                    return Err(outside(x));
                }
            }
        }
        Ok(Coloring {
            graph,
            root,
            radius,
            strategy: Strategy::Explicit,
            parameters: BTreeMap::new(),
            anchor: Vec::new(),
            blue,
            metadata: Metadata::None,
        })
    }

    /// As [`Coloring::explicit`], checking membership against a ball the
    /// caller already holds (possibly built under a larger budget).
    pub fn explicit_in_ball(
        graph: GraphHandle,
        b: &BallView,
        blue: impl IntoIterator<Item = VertexId>,
    ) -> Result<Self> {
        let blue: BTreeSet<VertexId> = blue.into_iter().collect();
        if let Some(x) = blue.iter().find(|x| !b.contains(x)) {
            return Err(Error::arg(format!("blue vertex {x} lies outside B_{}({})", b.root, b.radius)));
        }
        Ok(Coloring {
            graph,
            root: b.root.clone(),
            radius: b.radius,
            strategy: Strategy::Explicit,
            parameters: BTreeMap::new(),
            anchor: Vec::new(),
            blue,
            metadata: Metadata::None,
        })
    }

    pub fn graph(&self) -> &GraphHandle {
        &self.graph
    }

    pub fn family(&self) -> String {
        self.graph.family()
    }

    pub fn is_blue(&self, v: &VertexId) -> bool {
        self.blue.contains(v)
    }

    pub fn blue_count(&self) -> usize {
        self.blue.len()
    }

    /// Indices of the blue vertices of a ball.
    pub fn blue_indices(&self, b: &BallView) -> Vec<usize> {
        (0..b.len()).filter(|&i| self.blue.contains(&b.vertices[i])).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        let file = ColoringFile {
            family: self.family(),
            root: self.root.clone(),
            radius: self.radius,
            strategy: self.strategy,
            parameters: self.parameters.clone(),
            anchor: self.anchor.clone(),
            blue: self.blue.iter().cloned().collect(),
            metadata: self.metadata.clone(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    /// Reads the JSON form, rebuilding the graph from its family string.
    pub fn from_json(s: &str) -> Result<Self> {
        let file: ColoringFile = serde_json::from_str(s)?;
        let graph = file.family.parse::<FamilySpec>()?.build()?;
        graph.neighbors(&file.root)?;
        Ok(Coloring {
            graph,
            root: file.root,
            radius: file.radius,
            strategy: file.strategy,
            parameters: file.parameters,
            anchor: file.anchor,
            blue: file.blue.into_iter().collect(),
            metadata: file.metadata,
        })
    }

    /// Re-runs the construction from the recorded parameters.
    pub fn replay(&self) -> Result<Coloring> {
        let p = |k: &str| -> Result<&Value> {
            self.parameters.get(k).ok_or_else(|| Error::arg(format!("coloring lacks parameter {k}")))
        };
        let uint = |k: &str| -> Result<usize> {
            p(k)?
                .as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| Error::arg(format!("parameter {k} is not an integer")))
        };
        let text = |k: &str| -> Result<String> {
            p(k)?.as_str().map(str::to_string).ok_or_else(|| Error::arg(format!("parameter {k} is not a string")))
        };
        let g = &self.graph;
        match self.strategy {
            Strategy::Dsc => dsc_coloring(g, &self.root, uint("r_pairs")?, self.radius),
            Strategy::DscRelaxed => dsc_coloring_relaxed(g, &self.root, uint("r_pairs")?, self.radius, uint("gap")?),
            Strategy::Random => {
                let mut s: RandomSchedule = text("schedule")?.parse()?;
                s.seed = p("seed")?.as_u64().ok_or_else(|| Error::arg("parameter seed is not an integer"))?;
                random_coloring(g, &self.root, self.radius, &s)
            }
            Strategy::MotionGrowth => {
                motion_growth_coloring_with(g, &self.root, text("epsilon")?.parse()?, self.radius, uint("margin")?)
            }
            Strategy::Explicit => Ok(self.clone()),
        }
    }
}
