//! End-to-end runs over configured topics.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use log::{info, warn};
use serde::Serialize;

use crate::analysis::{analyze_snapshot, AnalysisConfig, SnapshotAnalysis};
use crate::config::{ConstantsConfig, RunConfig, SnapshotSchedule};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::export::{
    group_rows, tree_dot, tree_export, write_group_csv, write_json, write_series_csv, GroupRow, HeatExport,
    HeatNodeExport,
};
use crate::forest::{forest_help, TopicState};
use crate::graph::{build_snapshot, TopicSnapshot};
use crate::heat::{inactive_nodes, scale, HeatSystem, NodeHeatMap};
use crate::ingest::ingest;
use crate::thermo::{series_from_analyses, TemperatureRecord, ThermoConstants};

/// Which files a run writes. Everything is computed regardless.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Artifacts {
    pub series: bool,
    pub trees: bool,
    pub heat: bool,
    pub groups: bool,
}

impl Artifacts {
    pub const ALL: Artifacts = Artifacts {
        series: true,
        trees: true,
        heat: true,
        groups: true,
    };
    pub const NONE: Artifacts = Artifacts {
        series: false,
        trees: false,
        heat: false,
        groups: false,
    };
}

impl Default for Artifacts {
    fn default() -> Self {
        Artifacts::ALL
    }
}

#[derive(Debug, Clone)]
pub struct YearResult {
    pub analysis: SnapshotAnalysis,
    pub record: TemperatureRecord,
    pub inactive: Vec<bool>,
    pub forward_iterations: usize,
    pub backward_iterations: usize,
    /// `None` when every paper ended up cold.
    pub heat: Option<NodeHeatMap>,
    pub std_temp: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct TopicResult {
    pub name: String,
    pub papers: usize,
    pub constants: ThermoConstants,
    pub years: Vec<YearResult>,
}

impl TopicResult {
    pub fn records(&self) -> Vec<TemperatureRecord> {
        self.years.iter().map(|y| y.record.clone()).collect()
    }
}

/// First year whose snapshot holds at least two papers.
pub fn first_analysable_year(full: &TopicSnapshot) -> Result<i32> {
    let mut years: Vec<i32> = full.nodes().iter().map(|n| n.year).collect();
    years.sort_unstable();
    if years.len() < 2 {
        return Err(Error::DegenerateTopic("topic needs at least two papers".into()));
    }
    Ok(years[1].max(full.year(full.pioneer())))
}

pub fn topic_years(full: &TopicSnapshot, schedule: &SnapshotSchedule) -> Result<Vec<i32>> {
    let first = first_analysable_year(full)?;
    let last = full.nodes().iter().map(|n| n.year).max().expect("non-empty topic");
    schedule.resolve(first, last.max(first))
}

/// Runs every snapshot of one topic: skeletons, temperatures and heat maps.
pub fn run_topic(
    name: &str,
    full: &TopicSnapshot,
    schedule: &SnapshotSchedule,
    constants: &ConstantsConfig,
    cfg: &AnalysisConfig,
) -> Result<TopicResult> {
    let consts = constants.resolve(full.len())?;
    let years = topic_years(full, schedule)?;
    let snapshots = years
        .iter()
        .map(|&t| build_snapshot(full, t))
        .collect::<Result<Vec<_>>>()?;
    let analyses = cfg
        .exec
        .map_slice(&snapshots, |s| {
            analyze_snapshot(s, cfg).map_err(|e| e.context(format!("year {}", s.timestamp())))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let records = series_from_analyses(&analyses, &consts, &cfg.entropy, cfg.exec)?;

    let heat = cfg.exec.map(analyses.len(), |i| {
        let a = &analyses[i];
        let prev = i.checked_sub(1).map(|j| &analyses[j].snapshot);
        let system = HeatSystem::new(&a.snapshot, prev, &a.diff, &a.scales, &cfg.heat);
        (system.diffuse(), inactive_nodes(prev, &a.snapshot), system.forward_iterations)
    });

    let mut out = Vec::with_capacity(analyses.len());
    for ((analysis, record), (std_temp, inactive, forward)) in analyses.into_iter().zip(records).zip(heat) {
        let heat = match scale(&std_temp, record.t_total) {
            Ok(h) => Some(h),
            Err(Error::AllColdTopic) => {
                warn!("{name} {}: every paper is cold, node temperatures left unscaled", record.year);
                None
            }
            Err(e) => return Err(e.context(format!("year {}", record.year))),
        };
        out.push(YearResult {
            analysis,
            record,
            inactive,
            forward_iterations: forward,
            backward_iterations: cfg.heat.backward_iterations,
            heat,
            std_temp,
        });
    }
    Ok(TopicResult {
        name: name.to_string(),
        papers: full.len(),
        constants: consts,
        years: out,
    })
}

/// Forest helping per shared year. A year is used when every topic of the
/// group has a record for it and for an earlier year.
pub fn group_forest(topics: &[&TopicResult], c: f64) -> Result<Vec<GroupRow>> {
    let mut by_year: Vec<BTreeMap<i32, (usize, &YearResult)>> = Vec::new();
    for t in topics {
        by_year.push(t.years.iter().enumerate().map(|(i, y)| (y.record.year, (i, y))).collect());
    }
    let mut shared: Vec<i32> = by_year[0].keys().copied().collect();
    shared.retain(|y| by_year.iter().all(|m| m.contains_key(y)));
    let mut rows = Vec::new();
    for year in shared {
        let mut states = Vec::with_capacity(topics.len());
        for (t, m) in topics.iter().zip(&by_year) {
            let (i, y) = m[&year];
            if i == 0 {
                break;
            }
            states.push(TopicState {
                name: t.name.clone(),
                age: f64::from(year - t.years[0].record.year),
                mass: y.record.mass,
                temperature: y.record.t_total,
                previous: Some(t.years[i - 1].record.t_total),
            });
        }
        if states.len() < topics.len() {
            continue;
        }
        let outcome = forest_help(&states, c).map_err(|e| e.context(format!("year {year}")))?;
        rows.extend(group_rows(year, &states, &outcome));
    }
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
struct YearMetadata {
    year: i32,
    nodes: usize,
    edges: usize,
    embedding_dims: usize,
    embedding_truncated: bool,
    max_dist: f64,
    avg_step: f64,
    avg_step_sampled: bool,
    removed_loop_edges: usize,
    tree_components: usize,
    structure_stagnant: bool,
    heat_forward_iterations: usize,
    heat_scaled: bool,
}

#[derive(Debug, Clone, Serialize)]
struct TopicMetadata {
    name: String,
    input: String,
    status: String,
    papers: Option<usize>,
    constants: Option<ThermoConstants>,
    years: Vec<YearMetadata>,
}

#[derive(Debug, Clone, Serialize)]
struct GroupMetadata {
    name: String,
    topics: Vec<String>,
    status: String,
    rows: usize,
}

#[derive(Debug, Clone, Serialize)]
struct RunMetadata {
    tool: &'static str,
    version: &'static str,
    artifacts: Artifacts,
    constants: ConstantsConfig,
    snapshots: SnapshotSchedule,
    analysis: AnalysisConfig,
    parallel_feature: bool,
    topics: Vec<TopicMetadata>,
    groups: Vec<GroupMetadata>,
}

#[derive(Debug)]
pub struct RunSummary {
    pub topics: Vec<TopicResult>,
    pub groups: BTreeMap<String, Vec<GroupRow>>,
    /// `(topic or group name, error)`, in configuration order.
    pub failures: Vec<(String, Error)>,
}

impl RunSummary {
    pub fn topic(&self, name: &str) -> Option<&TopicResult> {
        self.topics.iter().find(|t| t.name == name)
    }
}

fn year_metadata(y: &YearResult) -> YearMetadata {
    let a = &y.analysis;
    YearMetadata {
        year: y.record.year,
        nodes: y.record.nodes,
        edges: y.record.edges,
        embedding_dims: a.embedding_dims,
        embedding_truncated: a.embedding_truncated,
        max_dist: a.scales.max_dist,
        avg_step: a.scales.avg_step,
        avg_step_sampled: a.scales.avg_step_sampled,
        removed_loop_edges: a.acyclic.removed.len(),
        tree_components: a.tree.components.len(),
        structure_stagnant: y.record.structure_stagnant,
        heat_forward_iterations: y.forward_iterations,
        heat_scaled: y.heat.is_some(),
    }
}

fn write_topic(out: &Path, t: &TopicResult, artifacts: Artifacts) -> Result<()> {
    let dir = out.join(&t.name);
    fs::create_dir_all(&dir)?;
    if artifacts.series {
        write_series_csv(&dir.join("series.csv"), &t.records())?;
    }
    for y in &t.years {
        let year = y.record.year;
        if artifacts.trees {
            let tree = tree_export(&t.name, &y.analysis, y.heat.as_ref(), y.record.t_total);
            fs::write(dir.join(format!("tree_{year}.dot")), tree_dot(&tree))?;
            write_json(&dir.join(format!("tree_{year}.json")), &tree)?;
        }
        if artifacts.heat {
            let s = &y.analysis.snapshot;
            let heat = HeatExport {
                topic: t.name.clone(),
                year,
                topic_temperature: y.record.t_total,
                backward_iterations: y.backward_iterations,
                forward_iterations: y.forward_iterations,
                scaled: y.heat.is_some(),
                nodes: (0..s.len())
                    .map(|u| HeatNodeExport {
                        id: s.id(u).to_string(),
                        inactive: y.inactive[u],
                        std_temperature: y.std_temp[u],
                        temperature: y.heat.as_ref().map(|h| h.scaled_temp[u]),
                    })
                    .collect(),
            };
            write_json(&dir.join(format!("heat_{year}.json")), &heat)?;
        }
    }
    Ok(())
}

/// Loads, analyses and writes every configured topic and group. Failures
/// of one topic are recorded and do not stop the others.
pub fn run_pipeline(cfg: &RunConfig, artifacts: Artifacts) -> Result<RunSummary> {
    cfg.validate()?;
    let results: Vec<Result<TopicResult>> = cfg.analysis.exec.map_slice(&cfg.topics, |src| {
        let full = ingest(&src.path)?;
        info!("{}: {} papers, {} citations", src.name, full.len(), full.edge_count());
        run_topic(&src.name, &full, &cfg.snapshots, &cfg.constants, &cfg.analysis)
    });

    let mut topics = Vec::new();
    let mut failures = Vec::new();
    let mut topic_meta = Vec::new();
    for (src, r) in cfg.topics.iter().zip(results) {
        let input = src.path.display().to_string();
        match r {
            Ok(t) => {
                topic_meta.push(TopicMetadata {
                    name: t.name.clone(),
                    input,
                    status: "ok".into(),
                    papers: Some(t.papers),
                    constants: Some(t.constants),
                    years: t.years.iter().map(year_metadata).collect(),
                });
                topics.push(t);
            }
            Err(e) => {
                warn!("{}: {e}", src.name);
                topic_meta.push(TopicMetadata {
                    name: src.name.clone(),
                    input,
                    status: format!("error: {e}"),
                    papers: None,
                    constants: None,
                    years: Vec::new(),
                });
                failures.push((src.name.clone(), e.context(format!("topic {}", src.name))));
            }
        }
    }

    let mut groups = BTreeMap::new();
    let mut group_meta = Vec::new();
    for g in &cfg.groups {
        let members: Option<Vec<&TopicResult>> =
            g.topics.iter().map(|n| topics.iter().find(|t| &t.name == n)).collect();
        let (status, rows) = match members {
            None => ("skipped: a member topic failed".to_string(), Vec::new()),
            Some(members) => match group_forest(&members, cfg.constants.c) {
                Ok(rows) => ("ok".to_string(), rows),
                Err(e) => {
                    let status = format!("error: {e}");
                    failures.push((g.name.clone(), e.context(format!("group {}", g.name))));
                    (status, Vec::new())
                }
            },
        };
        group_meta.push(GroupMetadata {
            name: g.name.clone(),
            topics: g.topics.clone(),
            status,
            rows: rows.len(),
        });
        groups.insert(g.name.clone(), rows);
    }

    fs::create_dir_all(&cfg.output_dir)?;
    for t in &topics {
        write_topic(&cfg.output_dir, t, artifacts)?;
    }
    if artifacts.groups && !cfg.groups.is_empty() {
        let dir = cfg.output_dir.join("groups");
        fs::create_dir_all(&dir)?;
        for g in &group_meta {
            if g.status == "ok" {
                write_group_csv(&dir.join(format!("{}.csv", g.name)), &groups[&g.name])?;
            }
        }
    }
    let meta = RunMetadata {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        artifacts,
        constants: cfg.constants,
        snapshots: cfg.snapshots.clone(),
        analysis: cfg.analysis,
        parallel_feature: Execution::Parallel.is_parallel(),
        topics: topic_meta,
        groups: group_meta,
    };
    write_json(&cfg.output_dir.join("metadata.json"), &meta)?;
    Ok(RunSummary {
        topics,
        groups,
        failures,
    })
}
