//! Reducing `G^t` onto the node set of `G^{t-1}` with virtual citations.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{TopicSnapshot, WeightedDigraph};

/// Weighted graph over the previous snapshot's nodes (same dense indices).
#[derive(Debug, Clone, PartialEq)]
pub struct ShrunkGraph {
    pub graph: WeightedDigraph,
    /// For every edge that is not a real citation of the previous snapshot,
    /// the id of the new paper whose removal created it.
    pub provenance: BTreeMap<(usize, usize), String>,
}

impl ShrunkGraph {
    pub fn internal_energy(&self) -> f64 {
        internal_energy(&self.graph)
    }

    /// Total weight of edges absent from the previous snapshot.
    pub fn added_energy(&self) -> f64 {
        self.provenance.keys().map(|&(u, v)| self.graph.weight(u, v)).sum()
    }
}

/// Sum of edge weights.
pub fn internal_energy(g: &WeightedDigraph) -> f64 {
    g.total_weight()
}

/// Weight of each virtual citation among `m` youngest ancestors of a new
/// paper whose incoming citation weights sum to `incoming`.
pub fn virtual_weight(incoming: f64, m: usize) -> f64 {
    2.0 * incoming / (m * (m - 1)) as f64
}

struct Working {
    out: Vec<BTreeMap<usize, f64>>,
    inc: Vec<BTreeMap<usize, f64>>,
    origin: BTreeMap<(usize, usize), usize>,
}

impl Working {
    fn has(&self, u: usize, v: usize) -> bool {
        self.out[u].contains_key(&v)
    }

    /// Adds `u -> v` unless the pair already carries a weight.
    fn add_if_absent(&mut self, u: usize, v: usize, w: f64, cause: usize) {
        if u == v || self.has(u, v) {
            return;
        }
        self.out[u].insert(v, w);
        self.inc[v].insert(u, w);
        self.origin.insert((u, v), cause);
    }

    fn remove_node(&mut self, x: usize) {
        for (v, _) in std::mem::take(&mut self.out[x]) {
            self.inc[v].remove(&x);
            self.origin.remove(&(x, v));
        }
        for (u, _) in std::mem::take(&mut self.inc[x]) {
            self.out[u].remove(&x);
            self.origin.remove(&(u, x));
        }
    }

    fn reattach_children(&mut self, x: usize, parent: usize) {
        let children: Vec<(usize, f64)> = self.out[x].iter().map(|(&c, &w)| (c, w)).collect();
        for (c, w) in children {
            self.add_if_absent(parent, c, 0.5 * w, x);
        }
    }
}

pub fn shrink(prev: &TopicSnapshot, curr: &TopicSnapshot) -> Result<ShrunkGraph> {
    // curr index -> prev index
    let mut to_prev = vec![usize::MAX; curr.len()];
    for (i, node) in prev.nodes().iter().enumerate() {
        let j = curr
            .index_of(&node.id)
            .ok_or_else(|| Error::SnapshotOrder(format!("node `{}` missing from the later snapshot", node.id)))?;
        to_prev[j] = i;
    }
    let mut from_prev = vec![0usize; prev.len()];
    for (j, &i) in to_prev.iter().enumerate() {
        if i != usize::MAX {
            from_prev[i] = j;
        }
    }
    for (u, v) in prev.edges() {
        if !curr.has_edge(from_prev[u], from_prev[v]) {
            return Err(Error::SnapshotOrder(format!(
                "citation {} -> {} missing from the later snapshot",
                prev.id(v),
                prev.id(u)
            )));
        }
    }
    let is_old = |j: usize| to_prev[j] != usize::MAX;

    let n = curr.len();
    let mut work = Working {
        out: vec![BTreeMap::new(); n],
        inc: vec![BTreeMap::new(); n],
        origin: BTreeMap::new(),
    };
    for (u, v) in curr.edges() {
        work.out[u].insert(v, 1.0);
        work.inc[v].insert(u, 1.0);
    }

    let mut fresh: Vec<usize> = (0..n).filter(|&j| !is_old(j)).collect();
    fresh.sort_by(|&a, &b| curr.year(a).cmp(&curr.year(b)).then_with(|| curr.id(a).cmp(curr.id(b))));

    for &x in &fresh {
        let parents: Vec<usize> = work.inc[x].keys().copied().collect();
        match parents.len() {
            0 => {}
            1 => work.reattach_children(x, parents[0]),
            _ => {
                let ancestors = youngest_ancestors(&work, x, &is_old);
                match ancestors.len() {
                    0 => {}
                    1 => work.reattach_children(x, ancestors[0]),
                    m => {
                        let incoming: f64 = work.inc[x].values().sum();
                        let directed = virtual_weight(incoming, m);
                        for (i, &a) in ancestors.iter().enumerate() {
                            for &b in &ancestors[i + 1..] {
                                if prev.has_edge(to_prev[a], to_prev[b]) || prev.has_edge(to_prev[b], to_prev[a]) {
                                    continue;
                                }
                                let (ya, yb) = (curr.year(a), curr.year(b));
                                if ya < yb {
                                    work.add_if_absent(a, b, directed, x);
                                } else if ya > yb {
                                    work.add_if_absent(b, a, directed, x);
                                } else {
                                    work.add_if_absent(a, b, 0.5 * directed, x);
                                    work.add_if_absent(b, a, 0.5 * directed, x);
                                }
                            }
                        }
                    }
                }
            }
        }
        work.remove_node(x);
    }

    let mut graph = WeightedDigraph::new(prev.len());
    let mut provenance = BTreeMap::new();
    for (u, row) in work.out.iter().enumerate() {
        for (&v, &w) in row {
            let (pu, pv) = (to_prev[u], to_prev[v]);
            debug_assert!(pu != usize::MAX && pv != usize::MAX);
            graph.set(pu, pv, w);
            if let Some(&cause) = work.origin.get(&(u, v)) {
                provenance.insert((pu, pv), curr.id(cause).to_string());
            } else if !prev.has_edge(pu, pv) {
                // a real citation between two old papers that only shows up later
                provenance.insert((pu, pv), curr.id(v).to_string());
            }
        }
    }
    Ok(ShrunkGraph { graph, provenance })
}

/// Old papers reached first when walking up from each parent of `x`,
/// crossing new papers as needed. Ascending by index.
fn youngest_ancestors(work: &Working, x: usize, is_old: &impl Fn(usize) -> bool) -> Vec<usize> {
    let mut seen: HashSet<usize> = HashSet::from([x]);
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut found = Vec::new();
    for &p in work.inc[x].keys() {
        if seen.insert(p) {
            queue.push_back(p);
        }
    }
    while let Some(y) = queue.pop_front() {
        if is_old(y) {
            found.push(y);
            continue;
        }
        for &p in work.inc[y].keys() {
            if seen.insert(p) {
                queue.push_back(p);
            }
        }
    }
    found.sort_unstable();
    found
}
