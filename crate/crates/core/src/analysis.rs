//! Per-snapshot analysis: embedding, difference indices, skeleton tree.

use serde::{Deserialize, Serialize};

use crate::entropy::{structure_entropy, EntropyConfig, StructureEntropy};
use crate::error::Result;
use crate::exec::Execution;
use crate::graph::TopicSnapshot;
use crate::heat::HeatConfig;
use crate::skeleton::{
    cut_loops, diff_idx, graph_scales, prune_to_tree, AcyclicCitations, DifferenceIndices, GraphScales,
    SkeletonConfig, SkeletonTree,
};
use crate::spectral::{embed, embed_dist, SpectralConfig};
use crate::thermo::useful_info;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalysisConfig {
    pub exec: Execution,
    pub spectral: SpectralConfig,
    pub skeleton: SkeletonConfig,
    pub entropy: EntropyConfig,
    pub heat: HeatConfig,
}

#[derive(Debug, Clone)]
pub struct SnapshotAnalysis {
    pub snapshot: TopicSnapshot,
    pub embedding_dims: usize,
    pub embedding_truncated: bool,
    pub scales: GraphScales,
    pub diff: DifferenceIndices,
    pub acyclic: AcyclicCitations,
    pub tree: SkeletonTree,
    pub structure_entropy: StructureEntropy,
    pub useful_info: f64,
}

impl SnapshotAnalysis {
    pub fn year(&self) -> i32 {
        self.snapshot.timestamp()
    }

    pub fn volume(&self) -> f64 {
        self.snapshot.len() as f64
    }

    /// Topic mass: node count minus useful information.
    pub fn mass(&self) -> f64 {
        self.volume() - self.useful_info
    }
}

pub fn analyze_snapshot(snapshot: &TopicSnapshot, config: &AnalysisConfig) -> Result<SnapshotAnalysis> {
    let embedding = embed(snapshot, &config.spectral)?;
    let dist = embed_dist(&embedding, config.exec);
    let scales = graph_scales(snapshot, &dist, &config.skeleton, config.exec);
    let diff = diff_idx(snapshot, &dist, &scales, config.exec);
    let acyclic = cut_loops(snapshot, &diff.reduction_idx);
    let tree = prune_to_tree(snapshot, &acyclic, &diff.reduction_idx);
    let structure_entropy = structure_entropy(&tree, &config.entropy);
    let useful_info = useful_info(&tree, &diff);
    Ok(SnapshotAnalysis {
        snapshot: snapshot.clone(),
        embedding_dims: embedding.dims(),
        embedding_truncated: embedding.truncated,
        scales,
        diff,
        acyclic,
        tree,
        structure_entropy,
        useful_info,
    })
}
