//! Skeleton tree extraction: difference indices, loop cutting and pruning.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, VecDeque};

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::graph::{strongly_connected_components, TopicSnapshot};
use crate::spectral::EmbedDistMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SkeletonConfig {
    /// Count hops on the undirected view instead of along citations.
    pub undirected_avg_step: bool,
    /// Topics larger than this estimate the mean hop count from a sample.
    pub sample_threshold: usize,
    pub sample_sources: usize,
    pub seed: u64,
}

impl Default for SkeletonConfig {
    fn default() -> Self {
        SkeletonConfig {
            undirected_avg_step: false,
            sample_threshold: 5000,
            sample_sources: 2000,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphScales {
    /// Largest embedding distance across an existing citation.
    pub max_dist: f64,
    /// Mean hop count of shortest paths over reachable ordered pairs.
    pub avg_step: f64,
    pub avg_step_sampled: bool,
}

impl GraphScales {
    /// Distance assigned to pairs with no connecting path.
    pub fn fallback(&self) -> f64 {
        self.max_dist * self.avg_step
    }
}

pub fn max_dist(snapshot: &TopicSnapshot, dist: &EmbedDistMatrix) -> f64 {
    snapshot
        .edges()
        .map(|(u, v)| dist.get(u, v))
        .fold(0.0, f64::max)
}

fn undirected_neighbors(snapshot: &TopicSnapshot) -> Vec<Vec<usize>> {
    let mut nb = vec![Vec::new(); snapshot.len()];
    for (u, v) in snapshot.edges() {
        nb[u].push(v);
        nb[v].push(u);
    }
    for list in &mut nb {
        list.sort_unstable();
        list.dedup();
    }
    nb
}

fn bfs_hops(adjacency: &[Vec<usize>], source: usize) -> (u64, u64) {
    let n = adjacency.len();
    let mut hops = vec![u32::MAX; n];
    hops[source] = 0;
    let mut queue = VecDeque::from([source]);
    let (mut total, mut count) = (0u64, 0u64);
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            if hops[v] == u32::MAX {
                hops[v] = hops[u] + 1;
                total += hops[v] as u64;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    (total, count)
}

/// Mean BFS hop count over ordered pairs `(u, v)`, `u != v`, where `v` is
/// reachable from `u`. Returns 0 when no pair is reachable. The flag reports
/// whether sources were sampled.
pub fn avg_step(snapshot: &TopicSnapshot, config: &SkeletonConfig, exec: Execution) -> (f64, bool) {
    let adjacency = if config.undirected_avg_step {
        undirected_neighbors(snapshot)
    } else {
        snapshot.adjacency().to_vec()
    };
    let n = snapshot.len();
    let sampled = n > config.sample_threshold && config.sample_sources < n;
    let sources: Vec<usize> = if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut s = rand::seq::index::sample(&mut rng, n, config.sample_sources).into_vec();
        s.sort_unstable();
        s
    } else {
        (0..n).collect()
    };
    let per_source = exec.map_slice(&sources, |&s| bfs_hops(&adjacency, s));
    let (total, count) = per_source
        .iter()
        .fold((0u64, 0u64), |(t, c), &(a, b)| (t + a, c + b));
    let mean = if count == 0 { 0.0 } else { total as f64 / count as f64 };
    (mean, sampled)
}

pub fn graph_scales(
    snapshot: &TopicSnapshot,
    dist: &EmbedDistMatrix,
    config: &SkeletonConfig,
    exec: Execution,
) -> GraphScales {
    let (avg, sampled) = avg_step(snapshot, config, exec);
    GraphScales {
        max_dist: max_dist(snapshot, dist),
        avg_step: avg,
        avg_step_sampled: sampled,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapItem(f64, usize);

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

/// Dijkstra on the undirected view with embedding-distance weights.
/// Unreachable nodes get `f64::INFINITY`.
fn dijkstra(neighbors: &[Vec<usize>], dist: &EmbedDistMatrix, source: usize) -> Vec<f64> {
    let mut best = vec![f64::INFINITY; neighbors.len()];
    best[source] = 0.0;
    let mut heap = BinaryHeap::from([Reverse(HeapItem(0.0, source))]);
    while let Some(Reverse(HeapItem(d, u))) = heap.pop() {
        if d > best[u] {
            continue;
        }
        for &v in &neighbors[u] {
            let nd = d + dist.get(u, v);
            if nd < best[v] {
                best[v] = nd;
                heap.push(Reverse(HeapItem(nd, v)));
            }
        }
    }
    best
}

/// Weight of the lightest path between `u` and `w` on the undirected view,
/// or `max_dist * avg_step` when they are not connected.
pub fn shortest_weighted_dist(
    snapshot: &TopicSnapshot,
    dist: &EmbedDistMatrix,
    u: usize,
    w: usize,
    scales: &GraphScales,
) -> f64 {
    if u == w {
        return 0.0;
    }
    let d = dijkstra(&undirected_neighbors(snapshot), dist, u)[w];
    if d.is_finite() {
        d
    } else {
        scales.fallback()
    }
}

/// Papers that `v` draws on when computing difference indices: its
/// references, plus itself for the pioneer (self-loop).
pub fn parents_with_self_loop(snapshot: &TopicSnapshot, v: usize) -> Vec<usize> {
    let mut ps = snapshot.references(v).to_vec();
    if v == snapshot.pioneer() {
        if let Err(pos) = ps.binary_search(&v) {
            ps.insert(pos, v);
        }
    }
    ps
}

#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceIndices {
    /// `diff_idx[(u, v)]` sums the path distance from `u` to every parent of `v`.
    pub diff_idx: DMatrix<f64>,
    /// Row sums of `diff_idx` without the diagonal.
    pub reduction_idx: Vec<f64>,
}

impl DifferenceIndices {
    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.diff_idx[(u, v)]
    }

    pub fn from_matrix(diff_idx: DMatrix<f64>) -> Self {
        let n = diff_idx.nrows();
        let reduction_idx = (0..n)
            .map(|u| (0..n).filter(|&v| v != u).map(|v| diff_idx[(u, v)]).sum())
            .collect();
        DifferenceIndices { diff_idx, reduction_idx }
    }
}

pub fn diff_idx(
    snapshot: &TopicSnapshot,
    dist: &EmbedDistMatrix,
    scales: &GraphScales,
    exec: Execution,
) -> DifferenceIndices {
    let n = snapshot.len();
    let parents: Vec<Vec<usize>> = (0..n).map(|v| parents_with_self_loop(snapshot, v)).collect();

    let mut is_parent = vec![false; n];
    for ps in &parents {
        for &p in ps {
            is_parent[p] = true;
        }
    }
    let sources: Vec<usize> = (0..n).filter(|&p| is_parent[p]).collect();
    let mut slot = vec![usize::MAX; n];
    for (i, &p) in sources.iter().enumerate() {
        slot[p] = i;
    }

    let neighbors = undirected_neighbors(snapshot);
    let fallback = scales.fallback();
    let rows: Vec<Vec<f64>> = exec.map_slice(&sources, |&p| {
        dijkstra(&neighbors, dist, p)
            .into_iter()
            .map(|d| if d.is_finite() { d } else { fallback })
            .collect()
    });

    let columns: Vec<Vec<f64>> = exec.map(n, |v| {
        let mut col = vec![0.0; n];
        for &p in &parents[v] {
            let row = &rows[slot[p]];
            for u in 0..n {
                col[u] += row[u];
            }
        }
        col
    });
    let mut m = DMatrix::zeros(n, n);
    for (v, col) in columns.into_iter().enumerate() {
        m.set_column(v, &nalgebra::DVector::from_vec(col));
    }
    DifferenceIndices::from_matrix(m)
}

/// Citation structure after loop cutting.
#[derive(Debug, Clone, PartialEq)]
pub struct AcyclicCitations {
    /// `references[v]`: papers `v` still cites, ascending.
    pub references: Vec<Vec<usize>>,
    /// Removed `(cited, citer)` edges in removal order.
    pub removed: Vec<(usize, usize)>,
}

impl AcyclicCitations {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .references
            .iter()
            .enumerate()
            .flat_map(|(v, us)| us.iter().map(move |&u| (u, v)))
            .collect();
        e.sort_unstable();
        e
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.references.len()];
        for (v, us) in self.references.iter().enumerate() {
            for &u in us {
                succ[u].push(v);
            }
        }
        succ
    }
}

/// Shortest directed cycle through `start` inside `comp`, as a list of edges.
fn cycle_through(succ: &[Vec<usize>], in_comp: &[bool], start: usize) -> Vec<(usize, usize)> {
    let n = succ.len();
    let mut pred = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in &succ[x] {
            if !in_comp[y] {
                continue;
            }
            if y == start {
                let mut path = vec![(x, start)];
                let mut cur = x;
                while cur != start {
                    let p = pred[cur];
                    path.push((p, cur));
                    cur = p;
                }
                path.reverse();
                return path;
            }
            if !seen[y] {
                seen[y] = true;
                pred[y] = x;
                queue.push_back(y);
            }
        }
    }
    unreachable!("a strongly connected component always has a cycle through each member")
}

/// Removes edges until no directed cycle remains.
///
/// Per cycle, the dropped edge has the largest reduction-index gap between
/// its endpoints, preferring edges whose citer keeps another reference.
/// Ties go to the lowest `(cited, citer)` index pair.
pub fn cut_loops(snapshot: &TopicSnapshot, reduction_idx: &[f64]) -> AcyclicCitations {
    let n = snapshot.len();
    let mut references: Vec<Vec<usize>> = (0..n).map(|v| snapshot.references(v).to_vec()).collect();
    let mut succ: Vec<Vec<usize>> = snapshot.adjacency().to_vec();
    let mut removed = Vec::new();

    loop {
        let cyclic: Vec<Vec<usize>> = strongly_connected_components(&succ)
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect();
        if cyclic.is_empty() {
            break;
        }
        let mut in_comp = vec![false; n];
        for comp in &cyclic {
            for &u in comp {
                in_comp[u] = true;
            }
            let cycle = cycle_through(&succ, &in_comp, comp[0]);
            for &u in comp {
                in_comp[u] = false;
            }

            let keeps_connectivity: Vec<(usize, usize)> = cycle
                .iter()
                .copied()
                .filter(|&(_, b)| references[b].len() > 1)
                .collect();
            let candidates = if keeps_connectivity.is_empty() { cycle } else { keeps_connectivity };
            let gap = |&(a, b): &(usize, usize)| (reduction_idx[a] - reduction_idx[b]).abs();
            let &(a, b) = candidates
                .iter()
                .max_by(|x, y| gap(x).total_cmp(&gap(y)).then(y.cmp(x)))
                .expect("cycle has edges");

            succ[a].retain(|&x| x != b);
            references[b].retain(|&x| x != a);
            removed.push((a, b));
        }
    }
    AcyclicCitations { references, removed }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeComponent {
    pub root: usize,
    /// Ascending.
    pub nodes: Vec<usize>,
}

/// Single-parent forest rooted at the pioneer (plus any orphaned roots).
#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonTree {
    pub root: usize,
    pub parent_of: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// The pioneer's tree first, then the others by root index.
    pub components: Vec<TreeComponent>,
}

impl SkeletonTree {
    pub fn from_parents(root: usize, parent_of: Vec<Option<usize>>) -> Self {
        let n = parent_of.len();
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent_of.iter().enumerate() {
            if let Some(p) = *p {
                children[p].push(v);
            }
        }
        let mut roots: Vec<usize> = (0..n).filter(|&v| parent_of[v].is_none()).collect();
        roots.sort_by_key(|&r| (r != root, r));
        let components = roots
            .into_iter()
            .map(|r| {
                let mut nodes = vec![r];
                let mut i = 0;
                while i < nodes.len() {
                    let u = nodes[i];
                    i += 1;
                    nodes.extend_from_slice(&children[u]);
                }
                nodes.sort_unstable();
                TreeComponent { root: r, nodes }
            })
            .collect();
        SkeletonTree {
            root,
            parent_of,
            children,
            components,
        }
    }

    pub fn len(&self) -> usize {
        self.parent_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent_of.is_empty()
    }

    /// Kept `(parent, child)` edges, ascending by child.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.parent_of
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.parent_of.iter().filter(|p| p.is_some()).count()
    }

    pub fn is_root(&self, v: usize) -> bool {
        self.parent_of[v].is_none()
    }
}

/// Keeps one reference per paper: the one whose reduction index is closest
/// to the citer's (ties: older parent, then lower index). The pioneer keeps
/// none.
pub fn prune_to_tree(
    snapshot: &TopicSnapshot,
    acyclic: &AcyclicCitations,
    reduction_idx: &[f64],
) -> SkeletonTree {
    let pioneer = snapshot.pioneer();
    let parent_of = acyclic
        .references
        .iter()
        .enumerate()
        .map(|(v, refs)| {
            if v == pioneer {
                return None;
            }
            refs.iter().copied().filter(|&p| p != v).min_by(|&a, &b| {
                let da = (reduction_idx[v] - reduction_idx[a]).abs();
                let db = (reduction_idx[v] - reduction_idx[b]).abs();
                da.total_cmp(&db)
                    .then(snapshot.year(a).cmp(&snapshot.year(b)))
                    .then(a.cmp(&b))
            })
        })
        .collect();
    SkeletonTree::from_parents(pioneer, parent_of)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PaperNode;
    use approx::assert_abs_diff_eq;

    fn snap(nodes: &[(&str, i32)], cites: &[(&str, &str)]) -> TopicSnapshot {
        let ns = nodes
            .iter()
            .enumerate()
            .map(|(i, &(id, y))| {
                if i == 0 {
                    PaperNode::pioneer(id, y)
                } else {
                    PaperNode::new(id, y)
                }
            })
            .collect();
        TopicSnapshot::new(ns, cites.iter().copied(), None).unwrap()
    }

    fn uniform_dist(n: usize, w: f64) -> EmbedDistMatrix {
        EmbedDistMatrix::from_matrix(DMatrix::from_fn(n, n, |i, j| if i == j { 0.0 } else { w }))
    }

    #[test]
    fn avg_step_on_path() {
        // a -> b -> c in stored orientation: b cites a, c cites b
        let g = snap(&[("a", 2000), ("b", 2001), ("c", 2002)], &[("b", "a"), ("c", "b")]);
        let (m, sampled) = avg_step(&g, &SkeletonConfig::default(), Execution::Sequential);
        assert_abs_diff_eq!(m, 4.0 / 3.0, epsilon = 1e-15);
        assert!(!sampled);
    }

    #[test]
    fn avg_step_degenerate_cases() {
        let g = snap(&[("a", 2000), ("b", 2000)], &[("b", "a"), ("a", "b")]);
        assert_eq!(avg_step(&g, &SkeletonConfig::default(), Execution::Sequential).0, 1.0);
        let g = snap(&[("a", 2000), ("b", 2000)], &[]);
        assert_eq!(avg_step(&g, &SkeletonConfig::default(), Execution::Sequential).0, 0.0);
    }

    #[test]
    fn avg_step_undirected_flag() {
        let g = snap(&[("a", 2000), ("b", 2001), ("c", 2002)], &[("b", "a"), ("c", "b")]);
        let cfg = SkeletonConfig {
            undirected_avg_step: true,
            ..SkeletonConfig::default()
        };
        // pairs both ways: 4 at distance 1, 2 at distance 2
        assert_abs_diff_eq!(avg_step(&g, &cfg, Execution::Sequential).0, 8.0 / 6.0, epsilon = 1e-15);
    }

    #[test]
    fn avg_step_sampling_is_seeded() {
        let n = 40;
        let ids: Vec<String> = (0..n).map(|i| format!("n{i:02}")).collect();
        let nodes: Vec<(&str, i32)> = ids.iter().map(|s| (s.as_str(), 2000)).collect();
        let cites: Vec<(&str, &str)> = (1..n).map(|i| (ids[i].as_str(), ids[i - 1].as_str())).collect();
        let g = snap(&nodes, &cites);
        let cfg = SkeletonConfig {
            sample_threshold: 10,
            sample_sources: 8,
            ..SkeletonConfig::default()
        };
        let a = avg_step(&g, &cfg, Execution::Sequential);
        let b = avg_step(&g, &cfg, Execution::Parallel);
        assert!(a.1);
        assert_eq!(a, b);
    }

    #[test]
    fn shortest_dist_cases() {
        let g = snap(
            &[("a", 2000), ("b", 2001), ("c", 2001), ("d", 2002), ("x", 2003)],
            &[("b", "a"), ("c", "a"), ("d", "b"), ("d", "c")],
        );
        let idx = |s: &str| g.index_of(s).unwrap();
        let mut m = DMatrix::zeros(5, 5);
        let mut put = |a: &str, b: &str, w: f64| {
            m[(idx(a), idx(b))] = w;
            m[(idx(b), idx(a))] = w;
        };
        put("a", "b", 1.0);
        put("a", "c", 0.25);
        put("b", "d", 1.0);
        put("c", "d", 0.5);
        let dist = EmbedDistMatrix::from_matrix(m);
        let scales = GraphScales {
            max_dist: 1.0,
            avg_step: 1.5,
            avg_step_sampled: false,
        };
        assert_eq!(shortest_weighted_dist(&g, &dist, idx("a"), idx("a"), &scales), 0.0);
        assert_eq!(shortest_weighted_dist(&g, &dist, idx("a"), idx("x"), &scales), 1.5);
        // exhaustive paths a..d: a-b-d = 2, a-c-d = 0.75; b..c: b-a-c = 1.25, b-d-c = 1.5
        assert_abs_diff_eq!(shortest_weighted_dist(&g, &dist, idx("a"), idx("d"), &scales), 0.75);
        assert_abs_diff_eq!(shortest_weighted_dist(&g, &dist, idx("b"), idx("c"), &scales), 1.25);
    }

    #[test]
    fn diff_idx_hand_toy() {
        // p <- a <- b (a cites p, b cites a), uniform distance 1
        let g = snap(&[("p", 2000), ("a", 2001), ("b", 2002)], &[("a", "p"), ("b", "a")]);
        let dist = uniform_dist(3, 1.0);
        let scales = graph_scales(&g, &dist, &SkeletonConfig::default(), Execution::Sequential);
        let d = diff_idx(&g, &dist, &scales, Execution::Sequential);
        let (p, a, b) = (g.index_of("p").unwrap(), g.index_of("a").unwrap(), g.index_of("b").unwrap());
        // the pioneer is its own parent: DiffIdx[u][p] = d(u, p)
        assert_eq!(d.get(b, p), 2.0);
        assert_eq!(d.get(a, p), 1.0);
        assert_eq!(d.get(p, p), 0.0);
        // parent of b is a
        assert_eq!(d.get(p, b), 1.0);
        // b has no citers but is the column owner; column of a parentless node
        assert_eq!(d.reduction_idx[b], d.get(b, p) + d.get(b, a));
    }

    #[test]
    fn parentless_columns_are_zero() {
        let g = snap(&[("p", 2000), ("a", 2001), ("lonely", 2001)], &[("a", "p")]);
        let dist = uniform_dist(3, 0.7);
        let scales = graph_scales(&g, &dist, &SkeletonConfig::default(), Execution::Sequential);
        let d = diff_idx(&g, &dist, &scales, Execution::Sequential);
        let l = g.index_of("lonely").unwrap();
        assert!(d.diff_idx.column(l).iter().all(|&x| x == 0.0));
        // the lonely node reaches nothing: fallback applies to it
        let a = g.index_of("a").unwrap();
        assert_abs_diff_eq!(d.get(l, a), scales.fallback());
    }

    #[test]
    fn mutual_pair_loses_one_edge() {
        let g = snap(
            &[("P", 2000), ("c1", 2001), ("c2", 2001), ("c3", 2002), ("c4", 2002)],
            &[("c1", "P"), ("c2", "P"), ("c3", "c1"), ("c3", "P"), ("c4", "c2"), ("c4", "c3"), ("c3", "c4")],
        );
        let ri = vec![1.0, 2.0, 3.0, 4.0, 5.0];
        let cut = cut_loops(&g, &ri);
        assert_eq!(cut.removed.len(), 1);
        let (c3, c4) = (g.index_of("c3").unwrap(), g.index_of("c4").unwrap());
        let (a, b) = cut.removed[0];
        assert!((a, b) == (c3, c4) || (a, b) == (c4, c3));
        assert!(crate::graph::is_acyclic(&cut.successors()));
    }

    #[test]
    fn dag_is_untouched() {
        let g = snap(&[("p", 2000), ("a", 2001), ("b", 2002)], &[("a", "p"), ("b", "a"), ("b", "p")]);
        let cut = cut_loops(&g, &[0.0, 1.0, 2.0]);
        assert!(cut.removed.is_empty());
        assert_eq!(cut.edges(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn three_cycle_drops_widest_gap() {
        // x -> y -> z -> x with reduction indices 1, 2, 10; every node has one parent,
        // so all three edges are candidates; gaps are 1, 8 and 9.
        let g = snap(&[("x", 2000), ("y", 2000), ("z", 2000)], &[("y", "x"), ("z", "y"), ("x", "z")]);
        let (x, y, z) = (g.index_of("x").unwrap(), g.index_of("y").unwrap(), g.index_of("z").unwrap());
        let mut ri = vec![0.0; 3];
        ri[x] = 1.0;
        ri[y] = 2.0;
        ri[z] = 10.0;
        let cut = cut_loops(&g, &ri);
        assert_eq!(cut.removed, vec![(z, x)]);
    }

    #[test]
    fn cut_prefers_edges_that_keep_a_reference() {
        // x -> y -> x, plus y also cites w. Removing (x,y) leaves y with w; removing
        // (y,x) would orphan x. Widest gap is on (y,x) but it is not eligible.
        let g = snap(&[("w", 2000), ("x", 2001), ("y", 2001)], &[("y", "x"), ("x", "y"), ("y", "w")]);
        let (w, x, y) = (g.index_of("w").unwrap(), g.index_of("x").unwrap(), g.index_of("y").unwrap());
        let mut ri = vec![0.0; 3];
        ri[w] = 0.0;
        ri[x] = 0.0;
        ri[y] = 5.0;
        let cut = cut_loops(&g, &ri);
        assert_eq!(cut.removed, vec![(x, y)]);
    }

    #[test]
    fn prune_picks_closest_reduction_index() {
        let g = snap(
            &[("p", 2000), ("a", 2001), ("b", 2001), ("v", 2003)],
            &[("a", "p"), ("b", "p"), ("v", "p"), ("v", "a"), ("v", "b")],
        );
        let (p, a, b, v) = (
            g.index_of("p").unwrap(),
            g.index_of("a").unwrap(),
            g.index_of("b").unwrap(),
            g.index_of("v").unwrap(),
        );
        let mut ri = vec![0.0; 4];
        ri[v] = 10.0;
        // distances 0.5, 3.1, 0.4
        ri[p] = 10.5;
        ri[a] = 6.9;
        ri[b] = 9.6;
        let acyclic = cut_loops(&g, &ri);
        let tree = prune_to_tree(&g, &acyclic, &ri);
        assert_eq!(tree.parent_of[v], Some(b));
        assert_eq!(tree.parent_of[a], Some(p));
        assert_eq!(tree.parent_of[p], None);
        assert_eq!(tree.components.len(), 1);
    }

    #[test]
    fn prune_tie_breaks_on_year_then_index() {
        let g = snap(
            &[("p", 2000), ("a", 2002), ("b", 2001), ("v", 2003)],
            &[("a", "p"), ("b", "p"), ("v", "a"), ("v", "b")],
        );
        let ri = vec![1.0; 4];
        let tree = prune_to_tree(&g, &cut_loops(&g, &ri), &ri);
        let v = g.index_of("v").unwrap();
        assert_eq!(tree.parent_of[v], g.index_of("b"));
    }

    #[test]
    fn forest_counts_components() {
        let g = snap(&[("p", 2000), ("a", 2001), ("b", 2001), ("c", 2002)], &[("a", "p"), ("c", "b")]);
        let ri = vec![0.0; 4];
        let tree = prune_to_tree(&g, &cut_loops(&g, &ri), &ri);
        assert_eq!(tree.components.len(), g.len() - tree.edge_count());
        assert_eq!(tree.components[0].root, g.pioneer());
    }
}
