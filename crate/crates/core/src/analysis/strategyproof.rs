//! Exhaustive strategy-proofness check on the grid.
//!
//! For a fixed prediction every instance is run once; a table of each
//! outcome's (expected) cost at every grid point then answers every
//! "agent at x reports y" query by lookup.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use super::search::SearchConfig;
use super::spec::{Advice, MechanismSpec};
use crate::model::{Instance, Location};
use crate::Rational;

/// A profitable single-agent misreport.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub instance: Instance,
    pub advice: Advice,
    pub agent: Location,
    pub misreport: Location,
    pub cost_before: Rational,
    pub cost_after: Rational,
}

impl Violation {
    pub fn gain(&self) -> Rational {
        self.cost_before - self.cost_after
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "agents {}, prediction {}: agent at {} reports {}, cost {} -> {}",
            self.instance,
            self.advice,
            self.agent,
            self.misreport,
            self.cost_before,
            self.cost_after
        )
    }
}

/// Every profitable misreport over grid instances, agents, misreports and
/// predictions. Empty means no manipulation exists at this resolution.
pub fn check_strategyproof(spec: &MechanismSpec, config: &SearchConfig) -> Vec<Violation> {
    let grid = config.grid();
    let keys: Vec<Vec<u16>> = config
        .index_instances()
        .into_iter()
        .filter(|k| spec.accepts(k.len()))
        .collect();
    let instances: Vec<Instance> = keys
        .iter()
        .map(|k| Instance::new(k.iter().map(|&i| grid[i as usize]).collect()).expect("nonempty"))
        .collect();
    let index: HashMap<&[u16], usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| (k.as_slice(), i))
        .collect();

    config
        .advices(spec.advice_kind())
        .par_iter()
        .flat_map_iter(|advice| {
            let costs: Vec<Vec<Rational>> = instances
                .iter()
                .map(|instance| {
                    let outcome = spec
                        .apply(instance, advice)
                        .expect("search feeds well-formed inputs");
                    grid.iter().map(|&x| outcome.cost(x)).collect()
                })
                .collect();
            let mut found = Vec::new();
            let mut deviated = Vec::with_capacity(config.max_agents);
            for (i, key) in keys.iter().enumerate() {
                for (j, &x) in key.iter().enumerate() {
                    // Identical agents have identical deviations.
                    if j > 0 && key[j - 1] == x {
                        continue;
                    }
                    let before = costs[i][x as usize];
                    if before.is_zero() {
                        continue;
                    }
                    for y in 0..grid.len() as u16 {
                        if y == x {
                            continue;
                        }
                        deviated.clear();
                        deviated.extend(
                            key.iter()
                                .enumerate()
                                .filter(|&(m, _)| m != j)
                                .map(|(_, &k)| k),
                        );
                        let at = deviated.partition_point(|&k| k < y);
                        deviated.insert(at, y);
                        let after = costs[index[deviated.as_slice()]][x as usize];
                        if after < before {
                            found.push(Violation {
                                instance: instances[i].clone(),
                                advice: *advice,
                                agent: grid[x as usize],
                                misreport: grid[y as usize],
                                cost_before: before,
                                cost_after: after,
                            });
                        }
                    }
                }
            }
            found
        })
        .collect()
}
