//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::path::Path;

use knowtherm::graph::{PaperNode, TopicSnapshot, WeightedDigraph};
use knowtherm::skeleton::SkeletonTree;
use nalgebra::{DMatrix, DVector};
use rand::Rng;

pub fn topic(nodes: &[(&str, i32)], cites: &[(&str, &str)]) -> TopicSnapshot {
    let ns = nodes
        .iter()
        .enumerate()
        .map(|(i, &(id, y))| if i == 0 { PaperNode::pioneer(id, y) } else { PaperNode::new(id, y) })
        .collect();
    TopicSnapshot::new(ns, cites.iter().copied(), None).unwrap()
}

/// Dense row-stochastic transition matrix `P[u][v] = w(u, v) / d_out(u)`.
pub fn transition_matrix(g: &WeightedDigraph) -> DMatrix<f64> {
    let n = g.len();
    let mut p = DMatrix::zeros(n, n);
    for (u, v, w) in g.edges() {
        p[(u, v)] = w;
    }
    for u in 0..n {
        let d: f64 = p.row(u).sum();
        if d > 0.0 {
            p.row_mut(u).scale_mut(1.0 / d);
        }
    }
    p
}

/// Stationary distribution by a direct linear solve: `(P^T - I) phi = 0`
/// with one equation replaced by `sum(phi) = 1`.
pub fn stationary_by_solve(p: &DMatrix<f64>) -> DVector<f64> {
    let n = p.nrows();
    let mut a = p.transpose() - DMatrix::identity(n, n);
    let mut b = DVector::zeros(n);
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    b[n - 1] = 1.0;
    a.lu().solve(&b).expect("irreducible chain")
}

/// Directed Laplacian `I - (Phi^1/2 P Phi^-1/2 + Phi^-1/2 P^T Phi^1/2) / 2`.
pub fn directed_laplacian(p: &DMatrix<f64>, phi: &DVector<f64>) -> DMatrix<f64> {
    let n = p.nrows();
    let sq = DMatrix::from_diagonal(&phi.map(f64::sqrt));
    let isq = DMatrix::from_diagonal(&phi.map(|x| 1.0 / x.sqrt()));
    let sym = &sq * p * &isq + &isq * p.transpose() * &sq;
    DMatrix::identity(n, n) - sym * 0.5
}

pub struct TraceTerms {
    pub tr_l2: f64,
    pub tr_p2: f64,
    pub tr_mixed: f64,
    pub n: usize,
}

/// `tr(L^2)` by explicit matrix products, plus the two terms of its
/// expansion.
pub fn trace_terms(g: &WeightedDigraph) -> TraceTerms {
    let p = transition_matrix(g);
    let phi = stationary_by_solve(&p);
    let l = directed_laplacian(&p, &phi);
    let phim = DMatrix::from_diagonal(&phi);
    let phim_inv = DMatrix::from_diagonal(&phi.map(|x| 1.0 / x));
    TraceTerms {
        tr_l2: (&l * &l).trace(),
        tr_p2: (&p * &p).trace(),
        tr_mixed: (&p * phim_inv * p.transpose() * phim).trace(),
        n: g.len(),
    }
}

/// Strongly connected: a Hamiltonian cycle through a random permutation
/// plus random chords; no self-loops.
pub fn random_strongly_connected(rng: &mut impl Rng, n: usize) -> WeightedDigraph {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let mut g = WeightedDigraph::new(n);
    for i in 0..n {
        g.set(perm[i], perm[(i + 1) % n], rng.random_range(0.1..2.0));
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && g.weight(u, v) == 0.0 && rng.random_bool(0.3) {
                g.set(u, v, rng.random_range(0.1..2.0));
            }
        }
    }
    g
}

pub fn random_weighted_dag(rng: &mut impl Rng, n: usize) -> WeightedDigraph {
    let mut g = WeightedDigraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.4) {
                g.set(u, v, rng.random_range(0.1..2.0));
            }
        }
    }
    g
}

/// Citation topic over `n` papers: every paper cites a few older ones (the
/// pioneer with high probability) and one same-year pair cites each other.
pub fn random_dag_with_mutual_pair(rng: &mut impl Rng, n: usize) -> TopicSnapshot {
    let year = |i: usize| 2000 + (i / 4) as i32;
    let id = |i: usize| format!("n{i:02}");
    let nodes: Vec<PaperNode> = (0..n)
        .map(|i| if i == 0 { PaperNode::pioneer(id(i), year(i)) } else { PaperNode::new(id(i), year(i)) })
        .collect();
    let mut cites = Vec::new();
    for i in 1..n {
        if rng.random_bool(0.8) {
            cites.push((id(i), id(0)));
        }
        for j in 1..i {
            if rng.random_bool(0.15) {
                cites.push((id(i), id(j)));
            }
        }
    }
    if n >= 3 {
        let a = rng.random_range(1..n);
        let b = (1..n).find(|&b| b != a && year(b) == year(a)).unwrap_or(if a == 1 { 2 } else { 1 });
        cites.push((id(a), id(b)));
        cites.push((id(b), id(a)));
    }
    TopicSnapshot::new(nodes, cites, None).unwrap()
}

/// Structure entropy by walking ancestor chains: the subtree of `u` is every
/// node whose chain reaches `u`.
pub fn brute_structure_entropy(parent_of: &[Option<usize>]) -> Vec<Option<f64>> {
    let n = parent_of.len();
    let ancestors = |mut w: usize| {
        let mut chain = vec![w];
        while let Some(p) = parent_of[w] {
            chain.push(p);
            w = p;
        }
        chain
    };
    let degree = |w: usize| parent_of.iter().filter(|&&p| p == Some(w)).count() + usize::from(parent_of[w].is_some());
    let edges = parent_of.iter().filter(|p| p.is_some()).count() as f64;
    (0..n)
        .map(|u| {
            let p = parent_of[u]?;
            let sub_u: Vec<usize> = (0..n).filter(|&w| ancestors(w).contains(&u)).collect();
            let sub_p = (0..n).filter(|&w| ancestors(w).contains(&p)).count();
            let g: usize = sub_u.iter().map(|&w| degree(w)).sum();
            Some(-(g as f64) / (2.0 * edges) * (sub_u.len() as f64 / sub_p as f64).ln())
        })
        .collect()
}

/// Every non-root reaches a root without revisiting a node.
pub fn is_forest(tree: &SkeletonTree) -> bool {
    (0..tree.len()).all(|u| {
        let mut w = u;
        for _ in 0..=tree.len() {
            match tree.parent_of[w] {
                None => return true,
                Some(p) => w = p,
            }
        }
        false
    })
}

#[derive(Debug, Clone, serde::Deserialize)]
pub struct TableRow {
    pub topic: String,
    pub year: i32,
    pub nodes: usize,
    pub edges: usize,
    pub n: f64,
    #[serde(rename = "V")]
    pub v: f64,
    pub useful_info: f64,
    pub t_growth: f64,
    pub t_structure: Option<f64>,
    pub t_total: f64,
}

/// Per-topic yearly statistics, in file order.
pub fn topic_tables() -> Vec<TableRow> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/topic_tables.csv");
    csv::Reader::from_path(path)
        .unwrap()
        .deserialize()
        .collect::<Result<Vec<TableRow>, _>>()
        .unwrap()
}

/// Relative path -> contents of every file under `root`, sorted.
pub fn snapshot_dir(root: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                out.push((rel, std::fs::read(&path).unwrap()));
            }
        }
    }
    out.sort();
    out
}
