//! Forest helping: rising topics donate energy to stagnating siblings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicState {
    pub name: String,
    /// Years since the topic's first snapshot.
    pub age: f64,
    pub mass: f64,
    pub temperature: f64,
    pub previous: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestOutcome {
    pub temperatures: BTreeMap<String, f64>,
    pub helpers: Vec<String>,
    pub receivers: Vec<String>,
    /// Total energy given away.
    pub donated: f64,
    /// Temperature gain of every receiver.
    pub delta_t: f64,
}

/// Each topic warmer than last period gives away `c n T / (1 + sum of
/// ages)`, the mean of a Beta(1, sum of ages) share of its energy; the pool
/// is split over receivers in proportion to mass, so all of them warm by
/// the same amount.
pub fn forest_help(group: &[TopicState], c: f64) -> Result<ForestOutcome> {
    if group.len() < 2 {
        return Err(Error::Config(format!("forest helping needs at least 2 topics, got {}", group.len())));
    }
    let mut previous = Vec::with_capacity(group.len());
    for t in group {
        if t.age < 0.0 || t.mass <= 0.0 {
            return Err(Error::DegenerateTopic(format!(
                "topic {} has age {} and mass {}",
                t.name, t.age, t.mass
            )));
        }
        previous.push(t.previous.ok_or_else(|| Error::NoHistory(t.name.clone()))?);
    }
    let rising: Vec<bool> = group.iter().zip(&previous).map(|(t, &p)| t.temperature > p).collect();
    let helpers: Vec<String> = group.iter().zip(&rising).filter(|(_, &r)| r).map(|(t, _)| t.name.clone()).collect();
    let receivers: Vec<String> = group.iter().zip(&rising).filter(|(_, &r)| !r).map(|(t, _)| t.name.clone()).collect();

    let mut temperatures: BTreeMap<String, f64> = group.iter().map(|t| (t.name.clone(), t.temperature)).collect();
    if helpers.is_empty() || receivers.is_empty() {
        return Ok(ForestOutcome {
            temperatures,
            helpers,
            receivers,
            donated: 0.0,
            delta_t: 0.0,
        });
    }

    let age_sum: f64 = group.iter().map(|t| t.age).sum();
    let share = 1.0 / (1.0 + age_sum);
    let mut donated = 0.0;
    let mut receiving_mass = 0.0;
    for (t, &r) in group.iter().zip(&rising) {
        if r {
            let gift = c * t.mass * t.temperature * share;
            donated += gift;
            *temperatures.get_mut(&t.name).expect("known topic") -= gift / (c * t.mass);
        } else {
            receiving_mass += t.mass;
        }
    }
    let delta_t = donated / (c * receiving_mass);
    for name in &receivers {
        *temperatures.get_mut(name).expect("known topic") += delta_t;
    }
    Ok(ForestOutcome {
        temperatures,
        helpers,
        receivers,
        donated,
        delta_t,
    })
}
