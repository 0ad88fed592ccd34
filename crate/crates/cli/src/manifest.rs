//! Problem manifests: a JSON file naming the instance files and the
//! problem parameters. Relative paths resolve against the manifest's
//! directory.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use tcaug_core::augmentation::unrestricted_candidates;
use tcaug_core::io::{parse_cand, parse_matrix, parse_tg};
use tcaug_core::{AugmentationProblem, BinaryMatrix, CostModel, PairDemands, Requirement, Semantics, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RequirementSpec {
    All,
    Source { vertex: VertexId },
    Pairs {
        pairs: Vec<(VertexId, VertexId)>,
        /// Defaults to every pair.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        demand: Option<usize>,
    },
}

impl RequirementSpec {
    pub fn build(&self) -> Result<Requirement> {
        Ok(match self {
            RequirementSpec::All => Requirement::All,
            RequirementSpec::Source { vertex } => Requirement::Source(*vertex),
            RequirementSpec::Pairs { pairs, demand: None } => Requirement::Pairs(PairDemands::all(pairs.clone())?),
            RequirementSpec::Pairs { pairs, demand: Some(d) } => {
                Requirement::Pairs(PairDemands::at_least(pairs.clone(), *d)?)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    /// A `.cand` path, or `unrestricted` for every missing temporal edge.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<String>,
    /// A matrix file; replaces `graph` for OR-combination instances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub requirement: Option<RequirementSpec>,
    #[serde(default)]
    pub semantics: Semantics,
    #[serde(default)]
    pub cost: CostModel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    /// Preferred `solve` output; the command-line flag wins.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Text,
}

/// What a manifest describes once its files are loaded.
pub enum Instance {
    Augmentation(AugmentationProblem),
    Matrix { matrix: BinaryMatrix, budget: Option<usize> },
}

pub const UNRESTRICTED: &str = "unrestricted";

fn read(dir: &Path, rel: &str) -> Result<(PathBuf, String)> {
    let path = dir.join(rel);
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    Ok((path, text))
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let m: Manifest =
            serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))?;
        if m.schema != tcaug_core::SCHEMA_VERSION {
            bail!("unsupported manifest schema {}", m.schema);
        }
        Ok(m)
    }

    pub fn instance(&self, manifest_path: &Path) -> Result<Instance> {
        let dir = manifest_path.parent().unwrap_or(Path::new("."));
        match (&self.graph, &self.matrix) {
            (Some(_), Some(_)) => bail!("manifest names both a graph and a matrix"),
            (None, None) => bail!("manifest names neither a graph nor a matrix"),
            (None, Some(rel)) => {
                let (path, text) = read(dir, rel)?;
                let matrix = parse_matrix(&text).with_context(|| format!("in {}", path.display()))?;
                Ok(Instance::Matrix { matrix, budget: self.budget })
            }
            (Some(rel), None) => {
                let (path, text) = read(dir, rel)?;
                let base = parse_tg(&text).with_context(|| format!("in {}", path.display()))?;
                let candidates = match self.candidates.as_deref() {
                    None => Vec::new(),
                    Some(UNRESTRICTED) => unrestricted_candidates(&base),
                    Some(rel) => {
                        let (path, text) = read(dir, rel)?;
                        parse_cand(&text).with_context(|| format!("in {}", path.display()))?
                    }
                };
                let requirement = self
                    .requirement
                    .as_ref()
                    .ok_or_else(|| anyhow::anyhow!("manifest has no requirement"))?
                    .build()?;
                let problem = AugmentationProblem::new(base, candidates, requirement)?
                    .with_semantics(self.semantics)
                    .with_cost_model(self.cost)
                    .with_budget(self.budget);
                Ok(Instance::Augmentation(problem))
            }
        }
    }
}
