//! Topic knowledge temperature.

use serde::{Deserialize, Serialize};

use crate::analysis::{analyze_snapshot, AnalysisConfig, SnapshotAnalysis};
use crate::entropy::{von_neumann_entropy, EntropyConfig};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::TopicSnapshot;
use crate::shrink::shrink;
use crate::skeleton::{DifferenceIndices, SkeletonTree};

/// Topics above this many papers use the smaller initialization coefficient.
pub const LARGE_TOPIC: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoConstants {
    /// Ideal gas constant.
    pub r: f64,
    /// Heat capacity.
    pub c: f64,
    /// Initialization coefficient.
    pub k: f64,
}

impl Default for ThermoConstants {
    fn default() -> Self {
        ThermoConstants { r: 8.0, c: 1.0, k: 100.0 }
    }
}

impl ThermoConstants {
    /// Default constants with `k` picked from the size of the full topic.
    pub fn for_topic_size(papers: usize) -> Self {
        ThermoConstants {
            k: if papers > LARGE_TOPIC { 10.0 } else { 100.0 },
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.r > 0.0 && self.c > 0.0 && self.k > 0.0 {
            Ok(())
        } else {
            Err(Error::Config(format!("thermodynamic constants must be positive: {self:?}")))
        }
    }
}

/// Sum of DiffIdx over skeleton edges, normalized by the largest of them.
pub fn useful_info(tree: &SkeletonTree, diff: &DifferenceIndices) -> f64 {
    let values: Vec<f64> = tree.edges().into_iter().map(|(p, v)| diff.get(p, v)).collect();
    if values.is_empty() {
        return 0.0;
    }
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max <= 0.0 {
        // all terms tend to 1 in the equal-values limit
        return values.len() as f64;
    }
    values.iter().map(|x| x / max).sum()
}

/// `k * exp(S0 / (c n0)) * (n0 / V0)^(R / c)`
pub fn t_growth_init(s0: f64, n0: f64, v0: f64, consts: &ThermoConstants) -> Result<f64> {
    if n0 <= 0.0 || v0 <= 0.0 {
        return Err(Error::DegenerateTopic(format!(
            "initial mass {n0} and volume {v0} must be positive"
        )));
    }
    Ok(consts.k * (s0 / (consts.c * n0)).exp() * (n0 / v0).powf(consts.r / consts.c))
}

/// Isobaric update `T * (n_prev / n_curr) * (V_curr / V_prev)`.
pub fn t_growth_update(prev_t: f64, n_prev: f64, n_curr: f64, v_prev: f64, v_curr: f64) -> Result<f64> {
    if n_prev <= 0.0 || n_curr <= 0.0 || v_prev <= 0.0 || v_curr <= 0.0 {
        return Err(Error::DegenerateTopic(format!(
            "masses ({n_prev}, {n_curr}) and volumes ({v_prev}, {v_curr}) must be positive"
        )));
    }
    Ok(prev_t * (n_prev / n_curr) * (v_curr / v_prev))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructureChange {
    pub energy_prev: f64,
    pub energy_shrunk: f64,
    pub entropy_prev: f64,
    pub entropy_shrunk: f64,
    pub nodes: usize,
}

impl StructureChange {
    pub fn delta_energy(&self) -> f64 {
        self.energy_shrunk - self.energy_prev
    }

    pub fn delta_entropy(&self) -> f64 {
        self.entropy_shrunk - self.entropy_prev
    }

    /// `|dU / dS| / |V|`, or `EntropyStagnant` when `dS` vanishes.
    pub fn temperature(&self) -> Result<f64> {
        let ds = self.delta_entropy();
        if ds.abs() < 1e-12 {
            return Err(Error::EntropyStagnant { delta: ds });
        }
        Ok((self.delta_energy() / ds / self.nodes as f64).abs())
    }
}

pub fn structure_change(
    prev: &TopicSnapshot,
    curr: &TopicSnapshot,
    config: &EntropyConfig,
    exec: Execution,
) -> Result<StructureChange> {
    let shrunk = shrink(prev, curr)?;
    let prev_graph = prev.to_weighted();
    Ok(StructureChange {
        energy_prev: prev_graph.total_weight(),
        energy_shrunk: shrunk.internal_energy(),
        entropy_prev: von_neumann_entropy(&prev_graph, config, exec)?,
        entropy_shrunk: von_neumann_entropy(&shrunk.graph, config, exec)?,
        nodes: curr.len(),
    })
}

pub fn t_structure(prev: &TopicSnapshot, curr: &TopicSnapshot, config: &EntropyConfig, exec: Execution) -> Result<f64> {
    structure_change(prev, curr, config, exec)?.temperature()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemperatureRecord {
    pub year: i32,
    pub nodes: usize,
    pub edges: usize,
    pub useful_info: f64,
    pub mass: f64,
    pub volume: f64,
    pub t_growth: f64,
    /// `None` on the first record.
    pub t_structure: Option<f64>,
    /// Set when the entropy did not move and `t_structure` was recorded as 0.
    pub structure_stagnant: bool,
    pub t_total: f64,
}

/// Chains the records of already-analysed snapshots (ascending years).
pub fn series_from_analyses(
    analyses: &[SnapshotAnalysis],
    consts: &ThermoConstants,
    config: &EntropyConfig,
    exec: Execution,
) -> Result<Vec<TemperatureRecord>> {
    let mut records: Vec<TemperatureRecord> = Vec::with_capacity(analyses.len());
    for (i, a) in analyses.iter().enumerate() {
        let year = a.year();
        let (t_growth, t_structure, stagnant) = match records.last() {
            None => {
                let t = t_growth_init(a.structure_entropy.total, a.mass(), a.volume(), consts)
                    .map_err(|e| e.context(format!("year {year}")))?;
                (t, None, false)
            }
            Some(prev) => {
                if prev.year >= year {
                    return Err(Error::Config(format!("snapshot years must increase: {} then {year}", prev.year)));
                }
                let t = t_growth_update(prev.t_growth, prev.mass, a.mass(), prev.volume, a.volume())
                    .map_err(|e| e.context(format!("year {year}")))?;
                let change = structure_change(&analyses[i - 1].snapshot, &a.snapshot, config, exec)
                    .map_err(|e| e.context(format!("year {year}")))?;
                match change.temperature() {
                    Ok(ts) => (t, Some(ts), false),
                    Err(Error::EntropyStagnant { .. }) => (t, Some(0.0), true),
                    Err(e) => return Err(e.context(format!("year {year}"))),
                }
            }
        };
        records.push(TemperatureRecord {
            year,
            nodes: a.snapshot.len(),
            edges: a.snapshot.edge_count(),
            useful_info: a.useful_info,
            mass: a.mass(),
            volume: a.volume(),
            t_growth,
            t_structure,
            structure_stagnant: stagnant,
            t_total: t_growth + t_structure.unwrap_or(0.0),
        });
    }
    Ok(records)
}

/// Analyses every snapshot and assembles the temperature series.
pub fn temperature_series(
    snapshots: &[TopicSnapshot],
    consts: &ThermoConstants,
    config: &AnalysisConfig,
) -> Result<Vec<TemperatureRecord>> {
    let analyses = config
        .exec
        .map_slice(snapshots, |s| {
            analyze_snapshot(s, config).map_err(|e| e.context(format!("year {}", s.timestamp())))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    series_from_analyses(&analyses, consts, &config.entropy, config.exec)
}
