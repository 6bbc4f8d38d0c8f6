//! Query magnitudes and the hybrid argument: how much the final state can
//! move when the oracle's answers change on a few time-string pairs.

use std::collections::BTreeMap;

use serde::Serialize;

use super::measure::euclidean_distance;
use super::network::QueryNetwork;
use super::sim::{run_network, run_with_answer_fn, OracleInstance};
use super::state::{QuantumState, NORM_TOLERANCE};
use crate::concept::{gamma_hat, typical_concept, Concept, ConceptClass};
use crate::error::{Error, Result};

/// `q[t][x]`: probability mass on query string `x` just before oracle call `t + 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QueryMagnitudes {
    pub q: Vec<Vec<f64>>,
}

impl QueryMagnitudes {
    pub fn from_states(n: usize, states: &[QuantumState]) -> Result<Self> {
        let q = states
            .iter()
            .map(|s| {
                if s.m() < n + 1 {
                    return Err(Error::invalid("state too small for the query register"));
                }
                let shift = s.m() - n;
                let mut row = vec![0.0; 1 << n];
                for (z, a) in s.amplitudes().iter().enumerate() {
                    row[z >> shift] += a.norm_sqr();
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { q })
    }

    pub fn t(&self) -> usize {
        self.q.len()
    }

    /// `Σ_{t,x} q[t][x]`, which equals `T`.
    pub fn total(&self) -> f64 {
        self.q.iter().flatten().sum()
    }

    /// `Σ_{(t,x) ∈ F} q[t][x]`.
    pub fn mass_of(&self, table: &OverrideTable) -> f64 {
        table.answers.keys().map(|&(t, x)| self.q[t][x]).sum()
    }

    /// `Σ_t Σ_{x ∈ points} q[t][x]`.
    pub fn mass_on(&self, points: &[usize]) -> f64 {
        self.q
            .iter()
            .map(|row| points.iter().map(|&x| row[x]).sum::<f64>())
            .sum()
    }

    /// Every time-step sums to one.
    pub fn is_normalized(&self) -> bool {
        self.q
            .iter()
            .all(|row| (row.iter().sum::<f64>() - 1.0).abs() <= NORM_TOLERANCE)
    }
}

pub fn query_magnitudes(net: &QueryNetwork, c: &Concept) -> Result<QueryMagnitudes> {
    let trace = run_network(net, OracleInstance::Qmq(c))?;
    QueryMagnitudes::from_states(net.n(), &trace.pre_query)
}

/// Fixed answer bits `a_{t,x}` for a set of time-string pairs.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct OverrideTable {
    t_count: usize,
    answers: BTreeMap<(usize, usize), bool>,
}

impl OverrideTable {
    /// An empty table for a network with `t_count` queries.
    pub fn new(t_count: usize) -> Self {
        Self {
            t_count,
            answers: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, t: usize, x: usize, answer: bool) -> Result<()> {
        if t >= self.t_count {
            return Err(Error::invalid(format!(
                "override time {t} outside 0..{}",
                self.t_count
            )));
        }
        if self.answers.insert((t, x), answer).is_some() {
            return Err(Error::invalid(format!("pair ({t}, {x}) overridden twice")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.answers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.answers.is_empty()
    }

    pub fn get(&self, t: usize, x: usize) -> Option<bool> {
        self.answers.get(&(t, x)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), bool)> + '_ {
        self.answers.iter().map(|(&k, &v)| (k, v))
    }
}

/// Fills an override table greedily with the pairs of smallest query
/// magnitude while their total stays within `budget`. Answer bits are drawn
/// from `rng`.
pub fn saturating_overrides(
    magnitudes: &QueryMagnitudes,
    budget: f64,
    rng: &mut impl rand::Rng,
) -> OverrideTable {
    let mut pairs: Vec<(f64, usize, usize)> = magnitudes
        .q
        .iter()
        .enumerate()
        .flat_map(|(t, row)| row.iter().enumerate().map(move |(x, &v)| (v, t, x)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut table = OverrideTable::new(magnitudes.t());
    let mut used = 0.0;
    for (v, t, x) in pairs {
        if used + v > budget {
            break;
        }
        used += v;
        table
            .insert(t, x, rng.gen())
            .expect("pairs are distinct and t < T");
    }
    table
}

/// Final state when oracle call `t` answers `a_{t,x}` on every overridden
/// pair and `c(x)` elsewhere.
pub fn run_with_overrides(
    net: &QueryNetwork,
    c: &Concept,
    table: &OverrideTable,
) -> Result<QuantumState> {
    if table.t_count != net.query_count() {
        return Err(Error::DimensionMismatch {
            expected: net.query_count(),
            got: table.t_count,
        });
    }
    let answer = |t, x| table.get(t, x).unwrap_or_else(|| c.eval(x));
    Ok(run_with_answer_fn(net, OracleInstance::Qmq(c), answer, false)?.final_state)
}

/// Outcome of counting the concepts of a witness subset that a network can
/// tell apart from the subset's typical concept.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistinguishedCount {
    pub t: usize,
    pub epsilon: f64,
    pub subset_size: usize,
    /// Concepts whose final state lies farther than `ε` from the typical run.
    pub far: usize,
    /// Concepts with `Σ_t q_c(φ_t^ĉ) ≥ ε²/T`, the Markov-inequality set.
    pub heavy: usize,
    /// `T²·|C′|·γ̂/ε²`.
    pub bound: f64,
}

/// Counts, over the `γ̂` witness subset `C′` of `class`, the concepts `c`
/// with `‖φ_T^ĉ − φ_T^c‖ > ε`, where `ĉ` is the typical concept of `C′`.
pub fn distinguished_count(
    net: &QueryNetwork,
    class: &ConceptClass,
    epsilon: f64,
) -> Result<DistinguishedCount> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::invalid("ε must be positive"));
    }
    let stats = gamma_hat(class)?;
    let subset = class.subset(&stats.witness_subset)?;
    let typical = typical_concept(&subset);
    let reference = run_network(net, OracleInstance::Qmq(&typical))?;
    let magnitudes = QueryMagnitudes::from_states(net.n(), &reference.pre_query)?;
    let t = net.query_count();
    let mut far = 0;
    let mut heavy = 0;
    for c in subset.iter() {
        let state = super::sim::final_state(net, OracleInstance::Qmq(c))?;
        if euclidean_distance(&reference.final_state, &state)? > epsilon {
            far += 1;
        }
        let differing: Vec<usize> = (0..c.domain_size())
            .filter(|&x| c.eval(x) != typical.eval(x))
            .collect();
        if t > 0 && magnitudes.mass_on(&differing) >= epsilon * epsilon / t as f64 {
            heavy += 1;
        }
    }
    let g = *stats.gamma_hat.numer() as f64 / *stats.gamma_hat.denom() as f64;
    Ok(DistinguishedCount {
        t,
        epsilon,
        subset_size: subset.len(),
        far,
        heavy,
        bound: (t * t) as f64 * subset.len() as f64 * g / (epsilon * epsilon),
    })
}
