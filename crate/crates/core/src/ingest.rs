//! Reading topic files.
//!
//! Two encodings are accepted:
//!
//! * a single JSON document `{"nodes": [...], "edges": [...]}`;
//! * line-delimited JSON (`.jsonl` / `.ndjson`), one record per line, where
//!   a record with `citer`/`cited` is a citation and anything else a node.
//!
//! Node records are `{"id", "year", "pioneer"?, "title"?}`. Citations read
//! naturally (citer -> cited) and are flipped into the stored orientation.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{PaperNode, TopicSnapshot};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitationRecord {
    pub citer: String,
    pub cited: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicInputFile {
    pub nodes: Vec<PaperNode>,
    #[serde(default)]
    pub edges: Vec<CitationRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Location {
    Line(usize),
    Node(usize),
    Edge(usize),
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Location::Line(l) => write!(f, "line {l}"),
            Location::Node(i) => write!(f, "node record {i}"),
            Location::Edge(i) => write!(f, "edge record {i}"),
        }
    }
}

fn invalid(loc: Location, msg: impl std::fmt::Display) -> Error {
    Error::Validation(format!("{loc}: {msg}"))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LineRecord {
    Edge(CitationRecord),
    Node(PaperNode),
}

pub fn parse_document(text: &str) -> Result<TopicSnapshot> {
    let doc: TopicInputFile =
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("malformed topic document: {e}")))?;
    let nodes = doc.nodes.into_iter().enumerate().map(|(i, n)| (Location::Node(i), n)).collect();
    let edges = doc.edges.into_iter().enumerate().map(|(i, e)| (Location::Edge(i), e)).collect();
    validate_and_build(nodes, edges)
}

pub fn parse_lines(text: &str) -> Result<TopicSnapshot> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let loc = Location::Line(i + 1);
        match serde_json::from_str::<LineRecord>(line) {
            Ok(LineRecord::Edge(e)) => edges.push((loc, e)),
            Ok(LineRecord::Node(n)) => nodes.push((loc, n)),
            Err(e) => return Err(invalid(loc, format!("unrecognised record ({e})"))),
        }
    }
    validate_and_build(nodes, edges)
}

fn validate_and_build(
    nodes: Vec<(Location, PaperNode)>,
    edges: Vec<(Location, CitationRecord)>,
) -> Result<TopicSnapshot> {
    let mut declared: HashMap<&str, Location> = HashMap::new();
    let mut pioneers = Vec::new();
    for (loc, n) in &nodes {
        if let Some(first) = declared.insert(n.id.as_str(), *loc) {
            return Err(invalid(*loc, format!("duplicate node id `{}` (first declared at {first})", n.id)));
        }
        if n.is_pioneer {
            pioneers.push(*loc);
        }
    }
    match pioneers.len() {
        1 => {}
        0 => return Err(Error::Validation("no node is marked as the pioneer".into())),
        _ => {
            let at: Vec<String> = pioneers.iter().map(ToString::to_string).collect();
            return Err(Error::Validation(format!("multiple pioneers at {}", at.join(", "))));
        }
    }
    let mut seen = HashSet::new();
    let mut pairs = Vec::with_capacity(edges.len());
    for (loc, e) in &edges {
        for end in [&e.citer, &e.cited] {
            if !declared.contains_key(end.as_str()) {
                return Err(invalid(*loc, format!("citation endpoint `{end}` is not a declared node")));
            }
        }
        if e.citer == e.cited {
            return Err(invalid(*loc, format!("self-citation on `{}`", e.citer)));
        }
        if seen.insert((e.citer.as_str(), e.cited.as_str())) {
            pairs.push((e.citer.as_str(), e.cited.as_str()));
        }
    }
    let papers = nodes.iter().map(|(_, n)| n.clone()).collect();
    TopicSnapshot::new(papers, pairs, None)
}

/// Reads a topic file; `.jsonl` and `.ndjson` are line-delimited.
pub fn ingest(path: &Path) -> Result<TopicSnapshot> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    let lines = matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("jsonl") | Some("ndjson")
    );
    let parsed = if lines { parse_lines(&text) } else { parse_document(&text) };
    parsed.map_err(|e| e.context(path.display().to_string()))
}

pub fn to_document(snapshot: &TopicSnapshot) -> TopicInputFile {
    TopicInputFile {
        nodes: snapshot.nodes().to_vec(),
        edges: snapshot
            .citation_pairs()
            .into_iter()
            .map(|(citer, cited)| CitationRecord { citer, cited })
            .collect(),
    }
}

pub fn write_document(snapshot: &TopicSnapshot, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&to_document(snapshot))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let g = parse_document(r#"{"nodes": [{"id": "p", "year": 1999, "pioneer": true}]}"#).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn line_format_and_orientation() {
        let text = "{\"id\": \"p\", \"year\": 2000, \"pioneer\": true}\n\
                    {\"id\": \"a\", \"year\": 2001, \"title\": \"A, with \\\"quotes\\\"\"}\n\
                    \n\
                    {\"citer\": \"a\", \"cited\": \"p\"}\n";
        let g = parse_lines(text).unwrap();
        let (p, a) = (g.index_of("p").unwrap(), g.index_of("a").unwrap());
        assert!(g.has_edge(p, a));
        assert!(!g.has_edge(a, p));
        assert_eq!(g.node(a).title.as_deref(), Some("A, with \"quotes\""));
    }

    #[test]
    fn undeclared_endpoint_names_the_line() {
        let text = "{\"id\": \"p\", \"year\": 2000, \"pioneer\": true}\n{\"citer\": \"ghost\", \"cited\": \"p\"}\n";
        let err = parse_lines(text).unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        assert!(err.contains("ghost"), "{err}");
    }

    #[test]
    fn pioneer_count_is_checked() {
        let none = r#"{"nodes": [{"id": "p", "year": 2000}]}"#;
        assert!(parse_document(none).is_err());
        let two = r#"{"nodes": [{"id": "p", "year": 2000, "pioneer": true}, {"id": "q", "year": 2000, "pioneer": true}]}"#;
        let err = parse_document(two).unwrap_err().to_string();
        assert!(err.contains("node record 0") && err.contains("node record 1"), "{err}");
    }

    #[test]
    fn duplicates_and_self_citations() {
        let dup = r#"{"nodes": [{"id": "p", "year": 2000, "pioneer": true}, {"id": "p", "year": 2001}]}"#;
        assert!(parse_document(dup).unwrap_err().to_string().contains("node record 1"));
        let selfc = r#"{"nodes": [{"id": "p", "year": 2000, "pioneer": true}], "edges": [{"citer": "p", "cited": "p"}]}"#;
        assert!(parse_document(selfc).unwrap_err().to_string().contains("edge record 0"));
    }
}
