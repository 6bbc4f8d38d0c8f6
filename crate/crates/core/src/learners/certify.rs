use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::concept::{Concept, ConceptClass};
use crate::error::{Error, Result};
use crate::quantum::{final_state, measure_distribution, OracleInstance, QueryNetwork};

/// Success probability an exact learner must reach on every target.
pub const DEFAULT_THRESHOLD: f64 = 2.0 / 3.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TargetResult {
    /// Target truth table in hex.
    pub target: String,
    /// Probability that the decoded hypothesis equals the target.
    pub success: f64,
    /// Probability of outcomes the decode rule leaves undefined.
    pub undefined_mass: f64,
    /// Hex hypothesis ↦ probability, omitting outcomes below `1e-12`.
    pub hypotheses: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certification {
    pub queries: usize,
    pub threshold: f64,
    pub min_success: f64,
    pub passed: bool,
    pub targets: Vec<TargetResult>,
}

fn evaluate(net: &QueryNetwork, target: &Concept) -> Result<TargetResult> {
    let state = final_state(net, OracleInstance::Qmq(target))?;
    let probs = if net.decode().qubits.is_empty() {
        vec![1.0]
    } else {
        measure_distribution(&state, &net.decode().qubits)?.probs
    };
    let mut result = TargetResult {
        target: target.to_hex(),
        success: 0.0,
        undefined_mass: 0.0,
        hypotheses: BTreeMap::new(),
    };
    for (outcome, p) in probs.into_iter().enumerate() {
        match net.decode_outcome(outcome) {
            None => result.undefined_mass += p,
            Some(h) => {
                if h == target {
                    result.success += p;
                }
                if p >= 1e-12 {
                    *result.hypotheses.entry(h.to_hex()).or_insert(0.0) += p;
                }
            }
        }
    }
    Ok(result)
}

/// Runs `net` against the membership oracle of every concept in `class`
/// and computes each exact success probability from the final state.
/// The verdict passes when the smallest of them reaches `threshold`.
pub fn certify_learner(
    net: &QueryNetwork,
    class: &ConceptClass,
    threshold: f64,
) -> Result<Certification> {
    if class.n() != net.n() {
        return Err(Error::DimensionMismatch {
            expected: net.n(),
            got: class.n(),
        });
    }
    if net.uses_qex() {
        return Err(Error::invalid("exact certification needs a membership-query network"));
    }
    let targets = class
        .concepts()
        .par_iter()
        .map(|c| evaluate(net, c))
        .collect::<Result<Vec<_>>>()?;
    let min_success = targets.iter().map(|r| r.success).fold(f64::INFINITY, f64::min);
    Ok(Certification {
        queries: net.query_count(),
        threshold,
        min_success,
        passed: min_success >= threshold,
        targets,
    })
}
