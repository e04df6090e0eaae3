//! Output artifacts: series CSV, skeleton trees (DOT and JSON), node heat
//! maps and group CSVs. Formatting is fixed-precision so reruns are
//! byte-identical.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::analysis::SnapshotAnalysis;
use crate::error::Result;
use crate::forest::ForestOutcome;
use crate::heat::NodeHeatMap;
use crate::thermo::TemperatureRecord;

/// Cold to hot.
pub const TEMPERATURE_RAMP: [&str; 9] = [
    "#4575b4", "#74add1", "#abd9e9", "#e0f3f8", "#ffffbf", "#fee090", "#fdae61", "#f46d43", "#d73027",
];

pub const SERIES_HEADER: [&str; 9] = [
    "year", "nodes", "edges", "n", "V", "useful_info", "t_growth", "t_structure", "t_total",
];

fn fixed(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

/// Rows of the series CSV. `n` is written as `V - useful_info` of the
/// rounded values so the printed columns add up exactly.
pub fn series_rows(records: &[TemperatureRecord]) -> Vec<Vec<String>> {
    records
        .iter()
        .map(|r| {
            let ui = fixed(r.useful_info);
            let ui_rounded: f64 = ui.parse().expect("formatted float");
            vec![
                r.year.to_string(),
                r.nodes.to_string(),
                r.edges.to_string(),
                fixed(r.volume - ui_rounded),
                fixed(r.volume),
                ui,
                fixed(r.t_growth),
                r.t_structure.map(fixed).unwrap_or_default(),
                fixed(r.t_total),
            ]
        })
        .collect()
}

pub fn write_series_csv(path: &Path, records: &[TemperatureRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(SERIES_HEADER)?;
    for row in series_rows(records) {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Ramp bucket of a scaled temperature over `[0, 2 T]`.
pub fn ramp_bucket(scaled: f64, topic_temperature: f64) -> usize {
    if topic_temperature.is_nan() || topic_temperature <= 0.0 || !scaled.is_finite() {
        return 0;
    }
    let frac = scaled / (2.0 * topic_temperature);
    ((frac * TEMPERATURE_RAMP.len() as f64).floor().max(0.0) as usize).min(TEMPERATURE_RAMP.len() - 1)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeNodeExport {
    pub id: String,
    pub year: i32,
    pub parent: Option<String>,
    pub structure_entropy: Option<f64>,
    pub std_temperature: Option<f64>,
    pub temperature: Option<f64>,
    pub color: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeComponentExport {
    pub root: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeExport {
    pub topic: String,
    pub year: i32,
    pub root: String,
    pub topic_temperature: f64,
    pub structure_entropy: f64,
    pub removed_loop_edges: Vec<(String, String)>,
    pub components: Vec<TreeComponentExport>,
    pub nodes: Vec<TreeNodeExport>,
}

pub fn tree_export(topic: &str, a: &SnapshotAnalysis, heat: Option<&NodeHeatMap>, topic_temperature: f64) -> TreeExport {
    let s = &a.snapshot;
    let nodes = (0..s.len())
        .map(|u| {
            let scaled = heat.map(|h| h.scaled_temp[u]);
            TreeNodeExport {
                id: s.id(u).to_string(),
                year: s.year(u),
                parent: a.tree.parent_of[u].map(|p| s.id(p).to_string()),
                structure_entropy: a.structure_entropy.per_node[u],
                std_temperature: heat.map(|h| h.std_temp[u]),
                temperature: scaled,
                color: TEMPERATURE_RAMP[scaled.map_or(0, |x| ramp_bucket(x, topic_temperature))],
            }
        })
        .collect();
    TreeExport {
        topic: topic.to_string(),
        year: a.year(),
        root: s.id(a.tree.root).to_string(),
        topic_temperature,
        structure_entropy: a.structure_entropy.total,
        removed_loop_edges: a
            .acyclic
            .removed
            .iter()
            .map(|&(u, v)| (s.id(v).to_string(), s.id(u).to_string()))
            .collect(),
        components: a
            .tree
            .components
            .iter()
            .map(|c| TreeComponentExport {
                root: s.id(c.root).to_string(),
                size: c.nodes.len(),
            })
            .collect(),
        nodes,
    }
}

fn dot_quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Graphviz rendering of a tree export, edges drawn parent -> child.
/// Node fill follows the temperature ramp; width grows with structure
/// entropy (roots take the largest value in the tree).
pub fn tree_dot(tree: &TreeExport) -> String {
    let max_entropy = tree
        .nodes
        .iter()
        .filter_map(|n| n.structure_entropy)
        .fold(0.0, f64::max);
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", dot_quote(&format!("{}_{}", tree.topic, tree.year)));
    let _ = writeln!(out, "  node [shape=circle, style=filled, fixedsize=true, label=\"\"];");
    for n in &tree.nodes {
        let s = n.structure_entropy.unwrap_or(max_entropy);
        let width = (0.25 + 4.0 * s).min(3.0);
        let _ = writeln!(
            out,
            "  {} [fillcolor=\"{}\", width={:.3}, tooltip={}];",
            dot_quote(&n.id),
            n.color,
            width,
            dot_quote(&format!("{} ({})", n.id, n.year))
        );
    }
    for n in &tree.nodes {
        if let Some(p) = &n.parent {
            let _ = writeln!(out, "  {} -> {};", dot_quote(p), dot_quote(&n.id));
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatNodeExport {
    pub id: String,
    pub inactive: bool,
    pub std_temperature: f64,
    pub temperature: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatExport {
    pub topic: String,
    pub year: i32,
    pub topic_temperature: f64,
    pub backward_iterations: usize,
    pub forward_iterations: usize,
    /// False when every paper came out cold and no scaling was possible.
    pub scaled: bool,
    pub nodes: Vec<HeatNodeExport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupRow {
    pub year: i32,
    pub topic: String,
    pub age: f64,
    pub mass: f64,
    pub t_before: f64,
    pub t_previous: f64,
    pub t_after: f64,
    pub role: &'static str,
}

pub fn group_rows(year: i32, states: &[crate::forest::TopicState], outcome: &ForestOutcome) -> Vec<GroupRow> {
    states
        .iter()
        .map(|s| GroupRow {
            year,
            topic: s.name.clone(),
            age: s.age,
            mass: s.mass,
            t_before: s.temperature,
            t_previous: s.previous.unwrap_or(f64::NAN),
            t_after: outcome.temperatures[&s.name],
            role: if outcome.donated == 0.0 {
                "none"
            } else if outcome.helpers.contains(&s.name) {
                "helper"
            } else {
                "receiver"
            },
        })
        .collect()
}

pub fn write_group_csv(path: &Path, rows: &[GroupRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["year", "topic", "age", "n", "t_previous", "t_before", "t_after", "role"])?;
    for r in rows {
        w.write_record([
            r.year.to_string(),
            r.topic.clone(),
            fixed(r.age),
            fixed(r.mass),
            fixed(r.t_previous),
            fixed(r.t_before),
            fixed(r.t_after),
            r.role.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}
