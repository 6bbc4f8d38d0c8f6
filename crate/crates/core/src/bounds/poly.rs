//! Acceptance probabilities as multilinear polynomials in the oracle's truth table.

use rayon::prelude::*;
use serde::Serialize;

use crate::concept::Concept;
use crate::error::{Error, Result};
use crate::quantum::{final_state, measure_distribution, OracleInstance, QueryNetwork};

/// Largest number of oracle variables `N = 2^n` that is interpolated exactly.
pub const MAX_POLY_VARS: usize = 8;

/// A real multilinear polynomial in `X_0, …, X_{N−1}`. The coefficient of
/// the monomial `Π_{i ∈ S} X_i` is stored at the index whose bit `i` is set
/// exactly for `i ∈ S`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultilinearPolynomial {
    vars: usize,
    coefficients: Vec<f64>,
}

impl MultilinearPolynomial {
    /// Exact interpolation from the values `f(1_R)` at every subset mask `R`,
    /// by Möbius inversion `coef(S) = Σ_{R ⊆ S} (−1)^{|S∖R|} f(1_R)`.
    pub fn interpolate(vars: usize, values: &[f64]) -> Result<Self> {
        if values.len() != 1 << vars {
            return Err(Error::DimensionMismatch {
                expected: 1 << vars,
                got: values.len(),
            });
        }
        let mut coefficients = values.to_vec();
        for i in 0..vars {
            let bit = 1 << i;
            for mask in 0..coefficients.len() {
                if mask & bit != 0 {
                    coefficients[mask] -= coefficients[mask ^ bit];
                }
            }
        }
        Ok(Self { vars, coefficients })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn coefficient(&self, monomial: usize) -> f64 {
        self.coefficients.get(monomial).copied().unwrap_or(0.0)
    }

    /// Value at the 0/1 point whose set variables are the bits of `point`.
    pub fn evaluate_mask(&self, point: usize) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|&(s, _)| s & !point == 0)
            .map(|(_, c)| c)
            .sum()
    }

    /// Value at an arbitrary real point.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.vars {
            return Err(Error::DimensionMismatch {
                expected: self.vars,
                got: x.len(),
            });
        }
        Ok(self
            .coefficients
            .iter()
            .enumerate()
            .map(|(s, c)| {
                c * (0..self.vars)
                    .filter(|i| s >> i & 1 == 1)
                    .map(|i| x[i])
                    .product::<f64>()
            })
            .sum())
    }

    /// Degree counting only coefficients larger than `tol` in magnitude.
    pub fn degree(&self, tol: f64) -> usize {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() > tol)
            .map(|(s, _)| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Largest `|coef(S)|` over monomials with `|S| > degree`.
    pub fn max_coefficient_above(&self, degree: usize) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(s, _)| s.count_ones() as usize > degree)
            .map(|(_, c)| c.abs())
            .fold(0.0, f64::max)
    }

    /// Largest `|P(1_R) − values[R]|` over all 0/1 points.
    pub fn residual(&self, values: &[f64]) -> f64 {
        values
            .iter()
            .enumerate()
            .map(|(r, v)| (self.evaluate_mask(r) - v).abs())
            .fold(0.0, f64::max)
    }
}

/// A set `B` of outcomes of measuring `qubits`, given as outcome values
/// with the first qubit most significant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutcomeSet {
    pub qubits: Vec<usize>,
    pub values: Vec<usize>,
}

impl OutcomeSet {
    pub fn new(qubits: Vec<usize>, values: Vec<usize>) -> Self {
        Self { qubits, values }
    }

    /// Outcomes of `net` that decode to `c`.
    pub fn decoding_to(net: &QueryNetwork, c: &Concept) -> Self {
        let qubits = net.decode().qubits.clone();
        let values = (0..1usize << qubits.len())
            .filter(|&v| net.decode_outcome(v) == Some(c))
            .collect();
        Self { qubits, values }
    }

    fn probability(&self, net: &QueryNetwork, oracle: &Concept) -> Result<f64> {
        let state = final_state(net, OracleInstance::Qmq(oracle))?;
        if self.qubits.is_empty() {
            return Ok(if self.values.contains(&0) { 1.0 } else { 0.0 });
        }
        let marginal = measure_distribution(&state, &self.qubits)?;
        Ok(self.values.iter().map(|&v| marginal.prob(v)).sum())
    }
}

/// `Pr[outcome ∈ B]` at every one of the `2^N` oracles, indexed by truth-table mask.
pub fn acceptance_values(net: &QueryNetwork, outcomes: &OutcomeSet) -> Result<Vec<f64>> {
    let vars = 1usize << net.n();
    if vars > MAX_POLY_VARS {
        return Err(Error::CapExceeded {
            what: "oracle variables 2^n",
            limit: MAX_POLY_VARS,
            got: vars,
        });
    }
    (0..1u64 << vars)
        .into_par_iter()
        .map(|mask| outcomes.probability(net, &Concept::from_mask(net.n(), mask)?))
        .collect()
}

/// The acceptance probability of `outcomes` as a polynomial in the oracle
/// bits `X_x = c(x)`.
pub fn acceptance_polynomial(
    net: &QueryNetwork,
    outcomes: &OutcomeSet,
) -> Result<MultilinearPolynomial> {
    let values = acceptance_values(net, outcomes)?;
    MultilinearPolynomial::interpolate(1 << net.n(), &values)
}
