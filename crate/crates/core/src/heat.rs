//! Node knowledge temperature by heat diffusion over citations.
//!
//! Discretization: synchronous explicit Euler with step `1 / max_u s_u`,
//! where `s_u` is the conductivity flowing into `u` in the current
//! orientation. With that step each update of a free node is a convex
//! combination of its own and its neighbours' values. The pioneer is pinned
//! at 1 and inactive papers at 0 after every step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{TopicSnapshot, WeightedDigraph};
use crate::skeleton::{DifferenceIndices, GraphScales};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HeatConfig {
    /// Starting value of every free node.
    pub initial_temperature: f64,
    pub backward_iterations: usize,
}

impl Default for HeatConfig {
    fn default() -> Self {
        HeatConfig {
            initial_temperature: 0.5,
            backward_iterations: 1,
        }
    }
}

/// Papers with no citers in `curr`, plus papers already present in `prev`
/// that gained no citer since.
pub fn inactive_nodes(prev: Option<&TopicSnapshot>, curr: &TopicSnapshot) -> Vec<bool> {
    (0..curr.len())
        .map(|u| {
            let now = curr.out_degree_at(u);
            if now == 0 {
                return true;
            }
            match prev.and_then(|p| p.index_of(curr.id(u)).map(|i| p.out_degree_at(i))) {
                Some(before) => now <= before,
                None => false,
            }
        })
        .collect()
}

/// `A[i][u] * (0.5 + normalized DiffIdx[i][u])`, normalized over existing
/// citations. All edges get 0.5 when DiffIdx is constant on them.
pub fn conductivity(snapshot: &TopicSnapshot, diff: &DifferenceIndices) -> WeightedDigraph {
    let values: Vec<f64> = snapshot.edges().map(|(i, u)| diff.get(i, u)).collect();
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    WeightedDigraph::from_edges(
        snapshot.len(),
        snapshot.edges().zip(values).map(|((i, u), d)| {
            let norm = if span > 0.0 { (d - min) / span } else { 0.0 };
            (i, u, 0.5 + norm)
        }),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatSystem {
    pub conductivity: WeightedDigraph,
    pub hot: usize,
    pub cold: Vec<bool>,
    pub forward_iterations: usize,
    pub backward_iterations: usize,
    pub initial_temperature: f64,
}

impl HeatSystem {
    pub fn new(
        snapshot: &TopicSnapshot,
        prev: Option<&TopicSnapshot>,
        diff: &DifferenceIndices,
        scales: &GraphScales,
        config: &HeatConfig,
    ) -> Self {
        let hot = snapshot.pioneer();
        let mut cold = inactive_nodes(prev, snapshot);
        cold[hot] = false;
        HeatSystem {
            conductivity: conductivity(snapshot, diff),
            hot,
            cold,
            forward_iterations: scales.avg_step.floor() as usize,
            backward_iterations: config.backward_iterations,
            initial_temperature: config.initial_temperature,
        }
    }

    pub fn len(&self) -> usize {
        self.cold.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cold.is_empty()
    }

    fn pin(&self, t: &mut [f64]) {
        for (x, &c) in t.iter_mut().zip(&self.cold) {
            if c {
                *x = 0.0;
            }
            *x = x.clamp(0.0, 1.0);
        }
        t[self.hot] = 1.0;
    }

    pub fn initial_field(&self) -> Vec<f64> {
        let mut t = vec![self.initial_temperature; self.len()];
        self.pin(&mut t);
        t
    }

    /// One unpinned Euler step. `backward` diffuses along the transposed
    /// conductivity (from citers to the papers they cite).
    pub fn raw_step(&self, t: &[f64], backward: bool) -> Vec<f64> {
        let n = self.len();
        let mut flux = vec![0.0; n];
        let mut inflow = vec![0.0; n];
        for (i, u, c) in self.conductivity.edges() {
            // forward: u receives from i; backward: i receives from u
            let (to, from) = if backward { (i, u) } else { (u, i) };
            flux[to] += c * (t[from] - t[to]);
            inflow[to] += c;
        }
        let max_inflow = inflow.iter().copied().fold(0.0, f64::max);
        if max_inflow <= 0.0 {
            return t.to_vec();
        }
        let eta = 1.0 / max_inflow;
        t.iter().zip(&flux).map(|(x, f)| x + eta * f).collect()
    }

    pub fn step(&self, t: &[f64], backward: bool) -> Vec<f64> {
        let mut next = self.raw_step(t, backward);
        self.pin(&mut next);
        next
    }

    /// Standardized temperatures in `[0, 1]` after the backward and forward
    /// passes.
    pub fn diffuse(&self) -> Vec<f64> {
        let mut t = self.initial_field();
        for _ in 0..self.backward_iterations {
            t = self.step(&t, true);
        }
        for _ in 0..self.forward_iterations {
            t = self.step(&t, false);
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeHeatMap {
    pub std_temp: Vec<f64>,
    pub scaled_temp: Vec<f64>,
}

/// `std * T / mean(std)`.
pub fn scale(std_temp: &[f64], topic_temperature: f64) -> Result<NodeHeatMap> {
    let mean = std_temp.iter().sum::<f64>() / std_temp.len().max(1) as f64;
    if mean <= 0.0 {
        return Err(Error::AllColdTopic);
    }
    let factor = topic_temperature / mean;
    Ok(NodeHeatMap {
        std_temp: std_temp.to_vec(),
        scaled_temp: std_temp.iter().map(|x| x * factor).collect(),
    })
}
