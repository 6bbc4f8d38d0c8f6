use serde::Serialize;

use super::{ExampleOracle, LabeledExample};
use crate::concept::{vc_dimension, Concept, ConceptClass, Distribution};
use crate::error::{Error, Result};

/// Accuracy `ε` and confidence `δ`, both strictly inside (0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PacParams {
    epsilon: f64,
    delta: f64,
}

impl PacParams {
    pub fn new(epsilon: f64, delta: f64) -> Result<Self> {
        let inside = |v: f64| v > 0.0 && v < 1.0;
        if !inside(epsilon) || !inside(delta) {
            return Err(Error::invalid(format!(
                "ε = {epsilon} and δ = {delta} must lie strictly inside (0, 1)"
            )));
        }
        Ok(Self { epsilon, delta })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Sample size for a consistent learner over a class of VC dimension `d`:
/// `ceil((4/ε)·ln(2/δ) + (8d/ε)·ln(13/ε))`, at least 1.
pub fn pac_sample_size(params: PacParams, d: usize) -> usize {
    let (eps, delta) = (params.epsilon, params.delta);
    let m = (4.0 / eps) * (2.0 / delta).ln() + (8.0 * d as f64 / eps) * (13.0 / eps).ln();
    (m.ceil() as usize).max(1)
}

/// The first concept of `class`, in class order, consistent with every example.
pub fn consistent_hypothesis(class: &ConceptClass, sample: &[LabeledExample]) -> Result<Concept> {
    class
        .iter()
        .find(|c| sample.iter().all(|e| c.eval(e.x) == e.label))
        .cloned()
        .ok_or_else(|| {
            Error::ProtocolViolation(format!(
                "no concept is consistent with the {} examples drawn",
                sample.len()
            ))
        })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PacRun {
    pub hypothesis: Concept,
    pub samples: usize,
}

/// Draws `pac_sample_size(params, VC-DIM(class))` examples and returns the
/// first consistent concept.
pub fn pac_consistent_learner(
    class: &ConceptClass,
    oracle: &mut ExampleOracle,
    params: PacParams,
) -> Result<PacRun> {
    let d = vc_dimension(class)?.d;
    let m = pac_sample_size(params, d);
    let sample = oracle.draw_many(m);
    Ok(PacRun {
        hypothesis: consistent_hypothesis(class, &sample)?,
        samples: m,
    })
}

/// `Pr_{x~D}[h(x) != c(x)]`, computed exactly.
pub fn empirical_error(h: &Concept, c: &Concept, dist: &Distribution) -> Result<f64> {
    h.check_same_n(c)?;
    if dist.n() != c.n() {
        return Err(Error::DimensionMismatch {
            expected: c.n(),
            got: dist.n(),
        });
    }
    Ok(dist
        .weights()
        .iter()
        .enumerate()
        .filter(|&(x, _)| h.eval(x) != c.eval(x))
        .map(|(_, w)| w)
        .sum())
}

/// Uniform distribution on a maximum shattered set. A class with VC
/// dimension 0 shatters only the empty set; it gets a point mass on `0^n`.
pub fn hard_pac_distribution(class: &ConceptClass) -> Result<Distribution> {
    let witness = vc_dimension(class)?;
    if witness.set.is_empty() {
        Distribution::point_mass(class.n(), 0)
    } else {
        Distribution::uniform_on(class.n(), &witness.set)
    }
}
