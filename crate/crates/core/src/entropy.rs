//! Structure entropy of skeleton trees and approximate von Neumann entropy
//! of weighted digraphs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{strongly_connected_components, WeightedDigraph};
use crate::skeleton::SkeletonTree;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EntropyConfig {
    /// Base of the logarithm in structure entropy.
    pub log_base: f64,
    pub max_iterations: usize,
    /// L1 residual `|phi P - phi|` at which the stationary vector is accepted.
    pub tolerance: f64,
}

impl Default for EntropyConfig {
    fn default() -> Self {
        EntropyConfig {
            log_base: std::f64::consts::E,
            max_iterations: 200_000,
            tolerance: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureEntropy {
    /// `None` for roots.
    pub per_node: Vec<Option<f64>>,
    pub total: f64,
}

/// Subtree node counts and subtree degree sums (tree degree, undirected).
pub fn subtree_stats(tree: &SkeletonTree) -> (Vec<usize>, Vec<usize>) {
    let n = tree.len();
    let mut order = Vec::with_capacity(n);
    for comp in &tree.components {
        let start = order.len();
        order.push(comp.root);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            i += 1;
            order.extend_from_slice(&tree.children[u]);
        }
    }
    let mut size = vec![1usize; n];
    let mut cut = vec![0usize; n];
    for &u in order.iter().rev() {
        let degree = tree.children[u].len() + usize::from(tree.parent_of[u].is_some());
        cut[u] += degree;
        if let Some(p) = tree.parent_of[u] {
            size[p] += size[u];
            cut[p] += cut[u];
        }
    }
    (size, cut)
}

/// `S_u = -(g_u / 2|E|) log(V_u / V_parent(u))` for every non-root node,
/// where `g_u` sums tree degrees over the subtree of `u` and `V` counts
/// subtree nodes.
pub fn structure_entropy(tree: &SkeletonTree, config: &EntropyConfig) -> StructureEntropy {
    let edges = tree.edge_count();
    let mut per_node = vec![None; tree.len()];
    if edges == 0 {
        return StructureEntropy { per_node, total: 0.0 };
    }
    let (size, cut) = subtree_stats(tree);
    let ln_base = config.log_base.ln();
    let mut total = 0.0;
    for u in 0..tree.len() {
        if let Some(p) = tree.parent_of[u] {
            let ratio = size[u] as f64 / size[p] as f64;
            let s = -(cut[u] as f64 / (2.0 * edges as f64)) * (ratio.ln() / ln_base);
            per_node[u] = Some(s);
            total += s;
        }
    }
    StructureEntropy { per_node, total }
}

/// Left stationary vector of the random walk on a strongly connected
/// weighted digraph (`P[u][v] = A[u][v] / d_out(u)`), normalized to sum 1.
///
/// Iterates the lazy walk `phi <- (phi + phi P) / 2`, which has the same
/// fixed point and also converges on periodic components.
pub fn stationary_left_vector(g: &WeightedDigraph, config: &EntropyConfig) -> Result<Vec<f64>> {
    let n = g.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let d_out: Vec<f64> = (0..n).map(|u| g.out_weight(u)).collect();
    if let Some(u) = d_out.iter().position(|&d| d <= 0.0) {
        return Err(Error::Numerical(format!(
            "node {u} has no outgoing weight; walk is not strongly connected"
        )));
    }
    let mut phi = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    for _ in 0..config.max_iterations {
        next.iter_mut().for_each(|x| *x = 0.0);
        for u in 0..n {
            let share = phi[u] / d_out[u];
            for &(v, w) in g.successors(u) {
                next[v] += share * w;
            }
        }
        let residual: f64 = next.iter().zip(&phi).map(|(a, b)| (a - b).abs()).sum();
        if residual < config.tolerance {
            let sum: f64 = next.iter().sum();
            return Ok(next.into_iter().map(|x| x / sum).collect());
        }
        for (p, &x) in phi.iter_mut().zip(&next) {
            *p = 0.5 * (*p + x);
        }
    }
    Err(Error::Numerical(format!(
        "stationary vector did not converge in {} iterations",
        config.max_iterations
    )))
}

/// Quadratic approximation of the von Neumann entropy of one strongly
/// connected component (already re-indexed to `0..n`).
pub fn component_entropy(g: &WeightedDigraph, config: &EntropyConfig) -> Result<f64> {
    let n = g.len();
    if n == 0 {
        return Ok(0.0);
    }
    if n == 1 && g.edge_count() == 0 {
        return Ok(0.0);
    }
    let phi = stationary_left_vector(g, config)?;
    let d_out: Vec<f64> = (0..n).map(|u| g.out_weight(u)).collect();
    let mut bidirectional = 0.0;
    let mut stationary = 0.0;
    for (u, v, w) in g.edges() {
        if u != v {
            let back = g.weight(v, u);
            if back > 0.0 {
                bidirectional += w * back / (d_out[u] * d_out[v]);
            }
        }
        let p = w / d_out[u];
        stationary += phi[u] / phi[v] * p * p;
    }
    let nf = n as f64;
    Ok(1.0 - 1.0 / nf - (bidirectional + stationary) / (2.0 * nf * nf))
}

/// Sum of [`component_entropy`] over strongly connected components, added
/// in order of each component's smallest node.
pub fn von_neumann_entropy(g: &WeightedDigraph, config: &EntropyConfig, exec: Execution) -> Result<f64> {
    let comps = strongly_connected_components(&g.adjacency());
    let parts = exec.map_slice(&comps, |comp| {
        component_entropy(&g.induced(comp), config)
            .map_err(|e| e.context(format!("strongly connected component starting at node {}", comp[0])))
    });
    let mut total = 0.0;
    for part in parts {
        total += part?;
    }
    Ok(total)
}
