use serde::Serialize;

use crate::classical::{pac_sample_size, PacParams};
use crate::concept::{gamma_hat, serialize_ratio, vc_dimension, ConceptClass, Rational};
use crate::error::Result;

/// Classical query and sample complexity bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalBounds {
    /// `1/(2γ̂) − 1`.
    pub similarity: f64,
    /// `log₂|C| − 1`.
    pub size: f64,
    /// Larger of the two lower bounds.
    pub exact_lower: f64,
    /// `ceil(log₂|C| / −log₂(1 − γ̂))`, achieved by the greedy learner.
    pub upper: usize,
    /// VC dimension `d`.
    pub vc: usize,
    /// `m(ε, δ, d)` when PAC parameters were supplied.
    pub pac_upper: Option<usize>,
}

/// Quantum query and sample complexity lower bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantumBounds {
    /// `(1/64)·√(1/γ̂)`.
    pub similarity: f64,
    /// `log₂|C| / (2n)`.
    pub size: f64,
    pub exact_lower: f64,
    /// `d / (12n)`.
    pub vc: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub class: String,
    pub n: usize,
    pub size: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub gamma_hat: Rational,
    pub classical: ClassicalBounds,
    pub quantum: QuantumBounds,
}

/// One CSV row per bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub class: String,
    pub model: &'static str,
    pub bound: &'static str,
    pub value: f64,
}

impl BoundReport {
    pub fn rows(&self) -> Vec<BoundRow> {
        let row = |model, bound, value| BoundRow {
            class: self.class.clone(),
            model,
            bound,
            value,
        };
        let c = &self.classical;
        let q = &self.quantum;
        let mut rows = vec![
            row("classical", "similarity", c.similarity),
            row("classical", "size", c.size),
            row("classical", "exact_lower", c.exact_lower),
            row("classical", "upper", c.upper as f64),
            row("classical", "vc", c.vc as f64),
        ];
        if let Some(m) = c.pac_upper {
            rows.push(row("classical", "pac_upper", m as f64));
        }
        rows.extend([
            row("quantum", "similarity", q.similarity),
            row("quantum", "size", q.size),
            row("quantum", "exact_lower", q.exact_lower),
            row("quantum", "vc", q.vc),
        ]);
        rows
    }
}

/// Every bound for `class`, evaluated with exact `γ̂` and VC dimension.
pub fn bound_report(
    label: &str,
    class: &ConceptClass,
    params: Option<PacParams>,
) -> Result<BoundReport> {
    let gamma = gamma_hat(class)?.gamma_hat;
    let d = vc_dimension(class)?.d;
    let g = *gamma.numer() as f64 / *gamma.denom() as f64;
    let log_size = (class.len() as f64).log2();
    let n = class.n() as f64;

    let similarity = 1.0 / (2.0 * g) - 1.0;
    let size = log_size - 1.0;
    let classical = ClassicalBounds {
        similarity,
        size,
        exact_lower: similarity.max(size),
        upper: (log_size / -(1.0 - g).log2()).ceil() as usize,
        vc: d,
        pac_upper: params.map(|p| pac_sample_size(p, d)),
    };
    let q_similarity = (1.0 / g).sqrt() / 64.0;
    let q_size = log_size / (2.0 * n);
    let quantum = QuantumBounds {
        similarity: q_similarity,
        size: q_size,
        exact_lower: q_similarity.max(q_size),
        vc: d as f64 / (12.0 * n),
    };
    Ok(BoundReport {
        class: label.to_string(),
        n: class.n(),
        size: class.len(),
        gamma_hat: gamma,
        classical,
        quantum,
    })
}
