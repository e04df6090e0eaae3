//! Directed citation graphs and temporal snapshots.
//!
//! Edge convention used throughout the crate: a stored edge `u -> v` means
//! "v cites u", i.e. knowledge flows from the cited paper to the citer. The
//! adjacency entry `A[u][v]` is 1 exactly when `v` cites `u`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_YEAR: i32 = 1800;

/// Latest admissible publication year: the current calendar year plus one.
pub fn max_year() -> i32 {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    // mean Gregorian year in seconds
    1970 + (secs / 31_556_952) as i32 + 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperNode {
    pub id: String,
    pub year: i32,
    #[serde(default, rename = "pioneer")]
    pub is_pioneer: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
}

impl PaperNode {
    pub fn new(id: impl Into<String>, year: i32) -> Self {
        PaperNode {
            id: id.into(),
            year,
            is_pioneer: false,
            title: None,
        }
    }

    pub fn pioneer(id: impl Into<String>, year: i32) -> Self {
        PaperNode {
            is_pioneer: true,
            ..PaperNode::new(id, year)
        }
    }
}

/// Immutable citation graph of one topic at a timestamp.
///
/// Nodes are kept sorted by id; the position in that order is the dense
/// index every matrix in the crate is addressed by.
#[derive(Debug, Clone, PartialEq)]
pub struct TopicSnapshot {
    nodes: Vec<PaperNode>,
    index: HashMap<String, usize>,
    // cited_by[u] = sorted citers of u (row u of A)
    cited_by: Vec<Vec<usize>>,
    // references[v] = sorted papers cited by v (column v of A)
    references: Vec<Vec<usize>>,
    edge_count: usize,
    pioneer: usize,
    timestamp: i32,
}

impl TopicSnapshot {
    /// Builds and validates a snapshot from nodes and `(citer, cited)` pairs.
    ///
    /// Duplicate citations collapse to one; self-citations are rejected.
    /// The timestamp defaults to the latest publication year.
    pub fn new<I, S>(mut nodes: Vec<PaperNode>, citations: I, timestamp: Option<i32>) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        if nodes.is_empty() {
            return Err(Error::Validation("topic has no nodes".into()));
        }
        nodes.sort_by(|a, b| a.id.cmp(&b.id));
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, n) in nodes.iter().enumerate() {
            if index.insert(n.id.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate node id `{}`", n.id)));
            }
        }
        let latest = max_year();
        for n in &nodes {
            if n.year < MIN_YEAR || n.year > latest {
                return Err(Error::Validation(format!(
                    "node `{}` has year {} outside [{MIN_YEAR}, {latest}]",
                    n.id, n.year
                )));
            }
        }
        let pioneers: Vec<usize> = (0..nodes.len()).filter(|&i| nodes[i].is_pioneer).collect();
        let pioneer = match pioneers.as_slice() {
            [p] => *p,
            [] => return Err(Error::Validation("topic has no pioneer".into())),
            many => {
                return Err(Error::Validation(format!(
                    "topic has {} pioneers: {}",
                    many.len(),
                    many.iter().map(|&i| nodes[i].id.as_str()).collect::<Vec<_>>().join(", ")
                )))
            }
        };
        let max_node_year = nodes.iter().map(|n| n.year).max().unwrap_or(MIN_YEAR);
        let timestamp = timestamp.unwrap_or(max_node_year);
        if let Some(n) = nodes.iter().find(|n| n.year > timestamp) {
            return Err(Error::Validation(format!(
                "node `{}` ({}) is younger than the snapshot timestamp {timestamp}",
                n.id, n.year
            )));
        }

        let mut pairs = Vec::new();
        for (citer, cited) in citations {
            let (citer, cited) = (citer.as_ref(), cited.as_ref());
            let v = *index
                .get(citer)
                .ok_or_else(|| Error::Validation(format!("citation from undeclared node `{citer}`")))?;
            let u = *index
                .get(cited)
                .ok_or_else(|| Error::Validation(format!("citation to undeclared node `{cited}`")))?;
            if u == v {
                return Err(Error::Validation(format!("self-citation on `{citer}`")));
            }
            pairs.push((u, v));
        }
        Ok(Self::from_indexed(nodes, index, pairs, pioneer, timestamp))
    }

    /// `edges` are `(cited, citer)` index pairs; may contain duplicates.
    fn from_indexed(
        nodes: Vec<PaperNode>,
        index: HashMap<String, usize>,
        mut edges: Vec<(usize, usize)>,
        pioneer: usize,
        timestamp: i32,
    ) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let n = nodes.len();
        let mut cited_by = vec![Vec::new(); n];
        let mut references = vec![Vec::new(); n];
        for &(u, v) in &edges {
            cited_by[u].push(v);
            references[v].push(u);
        }
        for r in &mut references {
            r.sort_unstable();
        }
        TopicSnapshot {
            nodes,
            index,
            cited_by,
            references,
            edge_count: edges.len(),
            pioneer,
            timestamp,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[PaperNode] {
        &self.nodes
    }

    pub fn node(&self, idx: usize) -> &PaperNode {
        &self.nodes[idx]
    }

    pub fn id(&self, idx: usize) -> &str {
        &self.nodes[idx].id
    }

    pub fn year(&self, idx: usize) -> i32 {
        self.nodes[idx].year
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn pioneer(&self) -> usize {
        self.pioneer
    }

    pub fn timestamp(&self) -> i32 {
        self.timestamp
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Papers citing `u` (successors under the stored orientation).
    pub fn citers(&self, u: usize) -> &[usize] {
        &self.cited_by[u]
    }

    /// Papers cited by `v` (predecessors, the "parents" of `v`).
    pub fn references(&self, v: usize) -> &[usize] {
        &self.references[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.cited_by[u].binary_search(&v).is_ok()
    }

    /// All stored edges `(u, v)` meaning "v cites u", in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cited_by
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// Successor lists under the stored orientation.
    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.cited_by
    }

    /// In-topic citation count of the node with the given id.
    pub fn out_degree(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .map(|u| self.cited_by[u].len())
            .ok_or_else(|| Error::NodeNotFound(id.to_string()))
    }

    pub fn out_degree_at(&self, u: usize) -> usize {
        self.cited_by[u].len()
    }

    /// Citation pairs `(citer id, cited id)` in ascending stored order.
    pub fn citation_pairs(&self) -> Vec<(String, String)> {
        self.edges()
            .map(|(u, v)| (self.nodes[v].id.clone(), self.nodes[u].id.clone()))
            .collect()
    }

    /// The same graph with every edge weighted 1.
    pub fn to_weighted(&self) -> WeightedDigraph {
        WeightedDigraph::from_edges(self.len(), self.edges().map(|(u, v)| (u, v, 1.0)))
    }

    /// Distinct publication years, ascending.
    pub fn years(&self) -> Vec<i32> {
        let mut ys: Vec<i32> = self.nodes.iter().map(|n| n.year).collect();
        ys.sort_unstable();
        ys.dedup();
        ys
    }
}

/// Induced subgraph on the papers published no later than `t`.
pub fn build_snapshot(full: &TopicSnapshot, t: i32) -> Result<TopicSnapshot> {
    let pioneer_year = full.year(full.pioneer);
    if t < pioneer_year {
        return Err(Error::EmptySnapshot { year: t, pioneer_year });
    }
    let keep: Vec<usize> = (0..full.len()).filter(|&i| full.year(i) <= t).collect();
    let mut remap = vec![usize::MAX; full.len()];
    for (new, &old) in keep.iter().enumerate() {
        remap[old] = new;
    }
    let nodes: Vec<PaperNode> = keep.iter().map(|&i| full.nodes[i].clone()).collect();
    let index = nodes.iter().enumerate().map(|(i, n)| (n.id.clone(), i)).collect();
    let edges = full
        .edges()
        .filter(|&(u, v)| remap[u] != usize::MAX && remap[v] != usize::MAX)
        .map(|(u, v)| (remap[u], remap[v]))
        .collect();
    Ok(TopicSnapshot::from_indexed(
        nodes,
        index,
        edges,
        remap[full.pioneer],
        t,
    ))
}

/// Sparse weighted digraph; `weight(u, v)` is the weight of "v cites u".
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightedDigraph {
    out: Vec<Vec<(usize, f64)>>,
}

impl WeightedDigraph {
    pub fn new(n: usize) -> Self {
        WeightedDigraph {
            out: vec![Vec::new(); n],
        }
    }

    /// Later duplicates of an ordered pair replace earlier ones.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut g = WeightedDigraph::new(n);
        for (u, v, w) in edges {
            g.set(u, v, w);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn set(&mut self, u: usize, v: usize, w: f64) {
        let row = &mut self.out[u];
        match row.binary_search_by_key(&v, |&(t, _)| t) {
            Ok(pos) => row[pos].1 = w,
            Err(pos) => row.insert(pos, (v, w)),
        }
    }

    pub fn weight(&self, u: usize, v: usize) -> f64 {
        let row = &self.out[u];
        row.binary_search_by_key(&v, |&(t, _)| t)
            .map(|pos| row[pos].1)
            .unwrap_or(0.0)
    }

    pub fn successors(&self, u: usize) -> &[(usize, f64)] {
        &self.out[u]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |&(v, w)| (u, v, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges().map(|(_, _, w)| w).sum()
    }

    pub fn out_weight(&self, u: usize) -> f64 {
        self.out[u].iter().map(|&(_, w)| w).sum()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        self.out
            .iter()
            .map(|row| row.iter().map(|&(v, _)| v).collect())
            .collect()
    }

    /// Subgraph induced on `nodes`, re-indexed by position in `nodes`.
    pub fn induced(&self, nodes: &[usize]) -> WeightedDigraph {
        let pos: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let mut g = WeightedDigraph::new(nodes.len());
        for (i, &u) in nodes.iter().enumerate() {
            for &(v, w) in &self.out[u] {
                if let Some(&j) = pos.get(&v) {
                    g.set(i, j, w);
                }
            }
        }
        g
    }

    /// Disjoint union; `other`'s nodes are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &WeightedDigraph) -> WeightedDigraph {
        let shift = self.len();
        let mut g = self.clone();
        g.out.extend(
            other
                .out
                .iter()
                .map(|row| row.iter().map(|&(v, w)| (v + shift, w)).collect()),
        );
        g
    }
}

/// Strongly connected components of a digraph given by successor lists.
///
/// Iterative Tarjan. Each component is sorted ascending and components are
/// ordered by their smallest node, so the output depends only on the graph.
pub fn strongly_connected_components(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adjacency.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0usize;
    // (node, next successor position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = adjacency[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}

/// Weakly connected components (edge direction ignored), same ordering rules.
pub fn weakly_connected_components(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adjacency.len();
    let mut undirected = vec![Vec::new(); n];
    for (u, vs) in adjacency.iter().enumerate() {
        for &v in vs {
            undirected[u].push(v);
            undirected[v].push(u);
        }
    }
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &v in &undirected[u] {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// True when the digraph has no directed cycle (self-loops count as cycles).
pub fn is_acyclic(adjacency: &[Vec<usize>]) -> bool {
    let has_self_loop = adjacency.iter().enumerate().any(|(u, vs)| vs.contains(&u));
    !has_self_loop && strongly_connected_components(adjacency).iter().all(|c| c.len() == 1)
}
