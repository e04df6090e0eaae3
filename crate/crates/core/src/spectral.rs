//! Normalized Laplacian and spectral node embedding.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::TopicSnapshot;

/// Eigenvalues within this distance below the band cutoff are treated as
/// lying on it (and therefore excluded).
const BAND_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SpectralConfig {
    /// Eigenvectors with eigenvalue strictly below this value form the
    /// embedding. The full row of an orthogonal eigenbasis is a unit vector
    /// orthogonal to every other row, so using all eigenvectors would put
    /// every pair of nodes at distance sqrt(2).
    pub band_cutoff: f64,
    /// Above this many nodes the embedding is capped at `truncated_dims`.
    pub full_dense_limit: usize,
    pub truncated_dims: usize,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig {
            band_cutoff: 1.0,
            full_dense_limit: 5000,
            truncated_dims: 512,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpectralEmbedding {
    /// Symmetrized normalized Laplacian that was decomposed.
    pub laplacian: DMatrix<f64>,
    /// Ascending.
    pub eigenvalues: DVector<f64>,
    /// Column `s` is the unit eigenvector of `eigenvalues[s]`, with its
    /// largest-magnitude component made positive.
    pub eigenvectors: DMatrix<f64>,
    /// Row `u` is node `u`'s coordinates over the selected eigenvectors.
    pub embedding: DMatrix<f64>,
    pub truncated: bool,
}

impl SpectralEmbedding {
    pub fn dims(&self) -> usize {
        self.embedding.ncols()
    }

    /// Wraps an explicit coordinate matrix (one row per node).
    pub fn from_coordinates(embedding: DMatrix<f64>) -> Self {
        let n = embedding.nrows();
        SpectralEmbedding {
            laplacian: DMatrix::zeros(n, n),
            eigenvalues: DVector::zeros(0),
            eigenvectors: DMatrix::zeros(n, 0),
            embedding,
            truncated: false,
        }
    }
}

/// `D^{-1/2} (D - A') D^{-1/2}` where `A'` is the adjacency with a self-loop
/// on the pioneer and `D` holds the row sums (citation counts) of `A'`.
/// Rows and columns of uncited nodes are zero.
pub fn normalized_laplacian(snapshot: &TopicSnapshot) -> DMatrix<f64> {
    let n = snapshot.len();
    let p = snapshot.pioneer();
    let degree: Vec<f64> = (0..n)
        .map(|u| snapshot.out_degree_at(u) as f64 + if u == p { 1.0 } else { 0.0 })
        .collect();
    let inv_sqrt: Vec<f64> = degree
        .iter()
        .map(|&d| if d > 0.0 { 1.0 / d.sqrt() } else { 0.0 })
        .collect();
    let mut l = DMatrix::zeros(n, n);
    for u in 0..n {
        let self_loop = if u == p { 1.0 } else { 0.0 };
        l[(u, u)] = (degree[u] - self_loop) * inv_sqrt[u] * inv_sqrt[u];
        for &v in snapshot.citers(u) {
            l[(u, v)] = -inv_sqrt[u] * inv_sqrt[v];
        }
    }
    l
}

pub fn embed(snapshot: &TopicSnapshot, config: &SpectralConfig) -> Result<SpectralEmbedding> {
    if snapshot.is_empty() {
        return Err(Error::Numerical("cannot embed an empty snapshot".into()));
    }
    let l = normalized_laplacian(snapshot);
    let sym = (&l + l.transpose()) * 0.5;
    let n = sym.nrows();

    // An all-zero row u contributes the exact eigenpair (0, e_u); only the
    // remaining block is decomposed.
    let support: Vec<usize> = (0..n).filter(|&i| sym.row(i).iter().any(|&x| x != 0.0)).collect();
    let mut pairs: Vec<(f64, DVector<f64>)> = Vec::with_capacity(n);
    if !support.is_empty() {
        let block = sym.select_rows(&support).select_columns(&support);
        let eig = SymmetricEigen::try_new(block, f64::EPSILON, 0)
            .ok_or_else(|| Error::Numerical("symmetric eigendecomposition did not converge".into()))?;
        if eig.eigenvalues.iter().any(|x| !x.is_finite()) {
            return Err(Error::Numerical("non-finite eigenvalue".into()));
        }
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            let mut v = DVector::zeros(n);
            for (r, &i) in support.iter().enumerate() {
                v[i] = eig.eigenvectors[(r, k)];
            }
            pairs.push((lambda, v));
        }
    }
    let mut in_support = vec![false; n];
    for &i in &support {
        in_support[i] = true;
    }
    for (i, _) in in_support.iter().enumerate().filter(|(_, &s)| !s) {
        let mut v = DVector::zeros(n);
        v[i] = 1.0;
        pairs.push((0.0, v));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pairs[a].0.total_cmp(&pairs[b].0).then(a.cmp(&b)));

    let eigenvalues = DVector::from_iterator(n, order.iter().map(|&i| pairs[i].0));
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        let mut v = pairs[i].1.clone();
        let mut best = 0;
        for r in 1..n {
            if v[r].abs() > v[best].abs() {
                best = r;
            }
        }
        if v[best] < 0.0 {
            v.neg_mut();
        }
        eigenvectors.set_column(col, &v);
    }

    let mut dims = eigenvalues
        .iter()
        .take_while(|&&x| x < config.band_cutoff - BAND_TOLERANCE)
        .count();
    let truncated = n > config.full_dense_limit && dims > config.truncated_dims;
    if truncated {
        dims = config.truncated_dims;
    }
    let embedding = eigenvectors.columns(0, dims).into_owned();

    Ok(SpectralEmbedding {
        laplacian: sym,
        eigenvalues,
        eigenvectors,
        embedding,
        truncated,
    })
}

/// Symmetric matrix of Euclidean distances between embedding rows.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbedDistMatrix {
    dist: DMatrix<f64>,
}

impl EmbedDistMatrix {
    pub fn from_matrix(dist: DMatrix<f64>) -> Self {
        EmbedDistMatrix { dist }
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.dist[(u, v)]
    }

    pub fn len(&self) -> usize {
        self.dist.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.nrows() == 0
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.dist
    }
}

pub fn embed_dist(embedding: &SpectralEmbedding, exec: Execution) -> EmbedDistMatrix {
    let x = &embedding.embedding;
    let n = x.nrows();
    let coords: Vec<Vec<f64>> = (0..n).map(|u| x.row(u).iter().copied().collect()).collect();
    // row u holds the distances to v > u
    let upper: Vec<Vec<f64>> = exec.map(n, |u| {
        let a = &coords[u];
        coords[u + 1..]
            .iter()
            .map(|b| a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt())
            .collect()
    });
    let mut dist = DMatrix::zeros(n, n);
    for (u, row) in upper.into_iter().enumerate() {
        for (off, d) in row.into_iter().enumerate() {
            let v = u + 1 + off;
            dist[(u, v)] = d;
            dist[(v, u)] = d;
        }
    }
    EmbedDistMatrix { dist }
}
