//! Knowledge temperature of temporal citation networks.
//!
//! A topic is a pioneer paper plus the papers citing it, observed as yearly
//! snapshots. For every snapshot the crate builds a skeleton tree from a
//! spectral embedding of the citation graph, and from the sequence of
//! snapshots it derives a topic temperature (growth plus structure terms),
//! per-paper temperatures by heat diffusion, and energy exchange between
//! topics of a group.
//!
//! Edges follow one convention throughout: a stored edge `u -> v` means
//! "paper `v` cites paper `u`".

pub mod analysis;
pub mod config;
pub mod entropy;
pub mod error;
pub mod exec;
pub mod export;
pub mod forest;
pub mod graph;
pub mod heat;
pub mod ingest;
pub mod pipeline;
pub mod shrink;
pub mod skeleton;
pub mod spectral;
pub mod synthetic;
pub mod thermo;

pub use analysis::{analyze_snapshot, AnalysisConfig, SnapshotAnalysis};
pub use config::RunConfig;
pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{build_snapshot, PaperNode, TopicSnapshot, WeightedDigraph};
pub use pipeline::{run_pipeline, Artifacts, RunSummary};
pub use thermo::{temperature_series, TemperatureRecord, ThermoConstants};
