use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use corecut::generators::{
    core_periphery_instance, plant_dangling, sample_dcsbm, sample_inhomogeneous, CorePeripherySpec, DcSbmSpec,
    InhomogeneousSpec,
};
use corecut::graph::largest_connected_component;
use corecut::io::{ingest_snap, Ingested};
use corecut::Graph;
use serde::{Deserialize, Serialize};

use crate::args::Source;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum Model {
    Inhomogeneous(InhomogeneousSpec),
    Dcsbm(DcSbmSpec),
    CorePeriphery(CorePeripherySpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DanglingPlan {
    pub g: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub model: Model,
    #[serde(default)]
    pub dangling: Option<DanglingPlan>,
}

/// A sampled graph with its planted block label per node, when the model has one.
pub struct Sample {
    pub graph: Graph,
    pub labels: Option<Vec<usize>>,
}

impl GenSpec {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing generator spec {}", path.display()))
    }

    pub fn sample(&self, seed: u64) -> Result<Sample> {
        let (graph, labels) = match &self.model {
            Model::Inhomogeneous(spec) => (sample_inhomogeneous(spec, seed)?, None),
            Model::Dcsbm(spec) => {
                let (g, l) = sample_dcsbm(spec, seed)?;
                (g, Some(l))
            }
            Model::CorePeriphery(spec) => {
                let inst = core_periphery_instance(spec, seed)?;
                let n = inst.graph.node_count();
                let k = inst.labels.iter().max().map_or(0, |m| m + 1);
                let mut labels = inst.labels;
                labels.resize(n, k);
                (inst.graph, Some(labels))
            }
        };
        match &self.dangling {
            Some(plan) => {
                let (g, records) = plant_dangling(&graph, plan.g, plan.count, seed)?;
                let labels = labels.map(|mut l| {
                    let tag = l.iter().max().map_or(0, |m| m + 1);
                    l.extend(records.iter().flat_map(|r| r.members.iter()).map(|_| tag));
                    l
                });
                Ok(Sample { graph: g, labels })
            }
            None => Ok(Sample { graph, labels }),
        }
    }
}

/// Loads the largest component of the input, with external ids. Generated
/// graphs use their node indices as external ids.
pub fn load(source: &Source, seed: u64) -> Result<Ingested> {
    match (&source.input, &source.gen_spec) {
        (Some(path), None) => ingest_snap(path).with_context(|| format!("ingesting {}", path.display())),
        (None, Some(path)) => {
            let sample = GenSpec::load(path)?.sample(seed)?;
            if sample.graph.edge_count() == 0 {
                bail!("generated graph has no edges");
            }
            let (graph, map) = largest_connected_component(&sample.graph)?;
            let external_ids = map.new_to_old.iter().map(|&v| v as u64).collect();
            Ok(Ingested { graph, external_ids })
        }
        _ => bail!("exactly one of --input and --gen-spec is required"),
    }
}
