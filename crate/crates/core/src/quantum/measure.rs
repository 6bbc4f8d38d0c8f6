use rand::distributions::{Distribution as _, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::state::QuantumState;
use crate::error::{Error, Result};

/// Exact outcome distribution of measuring some qubits of a state.
/// Outcome `v` lists the measured bits with the first qubit most significant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Marginal {
    pub qubits: Vec<usize>,
    pub probs: Vec<f64>,
}

impl Marginal {
    pub fn prob(&self, outcome: usize) -> f64 {
        self.probs.get(outcome).copied().unwrap_or(0.0)
    }

    /// `count` independent outcomes from a seeded generator.
    pub fn sample(&self, seed: u64, count: usize) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng, count)
    }

    pub fn sample_with(&self, rng: &mut impl rand::Rng, count: usize) -> Vec<usize> {
        let index = WeightedIndex::new(&self.probs).expect("a marginal has positive total mass");
        (0..count).map(|_| index.sample(rng)).collect()
    }
}

/// Marginal distribution of `qubits` (non-empty, distinct, in range).
pub fn measure_distribution(state: &QuantumState, qubits: &[usize]) -> Result<Marginal> {
    if qubits.is_empty() {
        return Err(Error::invalid("measure at least one qubit"));
    }
    let masks = qubits
        .iter()
        .map(|&q| {
            if q >= state.m() {
                Err(Error::invalid(format!("qubit {q} outside {} qubits", state.m())))
            } else {
                Ok(state.qubit_mask(q))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sorted = qubits.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("measured qubits must be distinct"));
    }
    let mut probs = vec![0.0; 1 << qubits.len()];
    for (z, a) in state.amplitudes().iter().enumerate() {
        let outcome = masks
            .iter()
            .fold(0usize, |acc, &mask| (acc << 1) | usize::from(z & mask != 0));
        probs[outcome] += a.norm_sqr();
    }
    Ok(Marginal {
        qubits: qubits.to_vec(),
        probs,
    })
}

/// `‖φ − ψ‖₂`.
pub fn euclidean_distance(phi: &QuantumState, psi: &QuantumState) -> Result<f64> {
    if phi.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            got: psi.dim(),
        });
    }
    Ok(phi
        .amplitudes()
        .iter()
        .zip(psi.amplitudes())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// `Σ_v |p(v) − q(v)|`.
pub fn total_variation(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    Ok(p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum())
}
