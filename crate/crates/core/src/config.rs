//! Run configuration, read from TOML.
//!
//! ```toml
//! output_dir = "out"
//!
//! [constants]
//! r = 8.0
//! c = 1.0
//! # k = 100.0   # default: 10 above 5000 papers, else 100
//!
//! [snapshots]
//! stride = 1
//! # years = [2010, 2012, 2014]
//!
//! [analysis]
//! exec = "parallel"
//!
//! [[topics]]
//! name = "gru"
//! path = "gru.json"
//!
//! [[groups]]
//! name = "rnn"
//! topics = ["gru", "lstm"]
//! ```

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::AnalysisConfig;
use crate::error::{Error, Result};
use crate::thermo::ThermoConstants;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopicSource {
    pub name: String,
    pub path: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    pub topics: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConstantsConfig {
    pub r: f64,
    pub c: f64,
    /// Overrides the size-dependent default.
    pub k: Option<f64>,
}

impl Default for ConstantsConfig {
    fn default() -> Self {
        let d = ThermoConstants::default();
        ConstantsConfig { r: d.r, c: d.c, k: None }
    }
}

impl ConstantsConfig {
    pub fn resolve(&self, topic_size: usize) -> Result<ThermoConstants> {
        let base = ThermoConstants::for_topic_size(topic_size);
        let consts = ThermoConstants {
            r: self.r,
            c: self.c,
            k: self.k.unwrap_or(base.k),
        };
        consts.validate()?;
        Ok(consts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SnapshotSchedule {
    /// Explicit years; overrides `stride`.
    pub years: Option<Vec<i32>>,
    pub stride: u32,
}

impl Default for SnapshotSchedule {
    fn default() -> Self {
        SnapshotSchedule { years: None, stride: 1 }
    }
}

impl SnapshotSchedule {
    /// Years to analyse for a topic whose first analysable year is `first`
    /// and whose newest paper is from `last`. The last year is always kept.
    pub fn resolve(&self, first: i32, last: i32) -> Result<Vec<i32>> {
        if let Some(years) = &self.years {
            let mut ys: Vec<i32> = years.iter().copied().filter(|&y| y >= first && y <= last).collect();
            ys.sort_unstable();
            ys.dedup();
            if ys.is_empty() {
                return Err(Error::Config(format!("none of the requested years fall in [{first}, {last}]")));
            }
            return Ok(ys);
        }
        if self.stride == 0 {
            return Err(Error::Config("snapshot stride must be positive".into()));
        }
        let mut ys: Vec<i32> = (first..=last).step_by(self.stride as usize).collect();
        if ys.last() != Some(&last) {
            ys.push(last);
        }
        Ok(ys)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub constants: ConstantsConfig,
    #[serde(default)]
    pub snapshots: SnapshotSchedule,
    #[serde(default)]
    pub analysis: AnalysisConfig,
    pub topics: Vec<TopicSource>,
    #[serde(default)]
    pub groups: Vec<GroupSpec>,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

impl RunConfig {
    pub fn for_topics(topics: Vec<TopicSource>) -> Self {
        RunConfig {
            output_dir: default_output_dir(),
            constants: ConstantsConfig::default(),
            snapshots: SnapshotSchedule::default(),
            analysis: AnalysisConfig::default(),
            topics,
            groups: Vec::new(),
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file; relative paths inside it are resolved against
    /// the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::from(e).context(path.display().to_string()))?;
        let mut cfg = Self::from_toml_str(&text).map_err(|e| e.context(path.display().to_string()))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        for t in &mut cfg.topics {
            if t.path.is_relative() {
                t.path = base.join(&t.path);
            }
        }
        if cfg.output_dir.is_relative() {
            cfg.output_dir = base.join(&cfg.output_dir);
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.topics.is_empty() {
            return Err(Error::Config("no topics configured".into()));
        }
        let mut names = HashSet::new();
        for t in &self.topics {
            if t.name.is_empty() || t.name.contains(['/', '\\']) {
                return Err(Error::Config(format!("invalid topic name `{}`", t.name)));
            }
            if !names.insert(t.name.as_str()) {
                return Err(Error::Config(format!("duplicate topic name `{}`", t.name)));
            }
        }
        let mut groups = HashSet::new();
        for g in &self.groups {
            if g.name.is_empty() || g.name.contains(['/', '\\']) {
                return Err(Error::Config(format!("invalid group name `{}`", g.name)));
            }
            if !groups.insert(g.name.as_str()) {
                return Err(Error::Config(format!("duplicate group name `{}`", g.name)));
            }
            if g.topics.len() < 2 {
                return Err(Error::Config(format!("group `{}` needs at least 2 topics", g.name)));
            }
            if let Some(unknown) = g.topics.iter().find(|t| !names.contains(t.as_str())) {
                return Err(Error::Config(format!("group `{}` names unknown topic `{unknown}`", g.name)));
            }
        }
        self.constants.resolve(0)?;
        let h = &self.analysis.heat;
        if !(0.0..=1.0).contains(&h.initial_temperature) {
            return Err(Error::Config("heat.initial_temperature must lie in [0, 1]".into()));
        }
        let s = &self.analysis.spectral;
        if s.truncated_dims == 0 || !s.band_cutoff.is_finite() {
            return Err(Error::Config("spectral settings are out of range".into()));
        }
        let e = &self.analysis.entropy;
        if e.log_base <= 0.0 || e.log_base == 1.0 || e.log_base.is_nan() || e.tolerance.is_nan() || e.tolerance <= 0.0 {
            return Err(Error::Config("entropy settings are out of range".into()));
        }
        Ok(())
    }
}
