//! Oracle gates and network execution.

use num_complex::Complex64;

use super::network::{QueryNetwork, Stage};
use super::state::QuantumState;
use crate::concept::{Concept, Distribution};
use crate::error::{Error, Result};

/// Applies `|x, b, y⟩ ↦ |x, b ⊕ answer(x), y⟩` where `x` is the value of
/// qubits `0..n` and `b` is qubit `n`.
pub(crate) fn apply_answers(
    state: &mut QuantumState,
    n: usize,
    mut answer: impl FnMut(usize) -> bool,
) -> Result<()> {
    let m = state.m();
    if m < n + 1 {
        return Err(Error::invalid(format!(
            "{m} qubits cannot hold an {n}-bit query and an answer bit"
        )));
    }
    let shift = m - n;
    let b_bit = state.qubit_mask(n);
    let amps = state.amplitudes_mut();
    let block = 1usize << shift;
    for x in 0..(1usize << n) {
        if !answer(x) {
            continue;
        }
        let base = x << shift;
        for z in base..base + block {
            if z & b_bit == 0 {
                amps.swap(z, z | b_bit);
            }
        }
    }
    Ok(())
}

/// The membership-query oracle gate for `c`. It is its own inverse.
pub fn apply_qmq(state: &mut QuantumState, c: &Concept) -> Result<()> {
    apply_answers(state, c.n(), |x| c.eval(x))
}

/// The state `Σ_x √D(x) |x, c(x), 0…0⟩` on `m` qubits.
pub fn prepare_qex(c: &Concept, dist: &Distribution, m: usize) -> Result<QuantumState> {
    let n = c.n();
    if dist.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: dist.n(),
        });
    }
    let mut state = QuantumState::zero(m)?;
    if m < n + 1 {
        return Err(Error::invalid(format!(
            "{m} qubits cannot hold an {n}-bit example and its label"
        )));
    }
    let b_bit = state.qubit_mask(n);
    let amps = state.amplitudes_mut();
    amps[0] = Complex64::new(0.0, 0.0);
    for (x, &w) in dist.weights().iter().enumerate() {
        let z = (x << (m - n)) | if c.eval(x) { b_bit } else { 0 };
        amps[z] = Complex64::new(w.sqrt(), 0.0);
    }
    Ok(state)
}

/// The oracle a network runs against.
#[derive(Clone, Copy, Debug)]
pub enum OracleInstance<'a> {
    Qmq(&'a Concept),
    Qex(&'a Concept, &'a Distribution),
}

impl OracleInstance<'_> {
    pub fn concept(&self) -> &Concept {
        match *self {
            OracleInstance::Qmq(c) | OracleInstance::Qex(c, _) => c,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunTrace {
    pub final_state: QuantumState,
    /// `|φ_t⟩` immediately before oracle call `t + 1`, for `t = 0..T`.
    pub pre_query: Vec<QuantumState>,
}

fn check_oracle(net: &QueryNetwork, oracle: &OracleInstance) -> Result<()> {
    let c = oracle.concept();
    if c.n() != net.n() {
        return Err(Error::DimensionMismatch {
            expected: net.n(),
            got: c.n(),
        });
    }
    match oracle {
        OracleInstance::Qmq(_) if net.uses_qex() => Err(Error::ProtocolViolation(
            "this network starts from an example oracle".into(),
        )),
        OracleInstance::Qex(..) if net.query_count() > 0 => Err(Error::ProtocolViolation(
            "this network makes membership queries".into(),
        )),
        _ => Ok(()),
    }
}

/// Runs `net` with oracle call `t` answering `answer(t, x)`.
pub(crate) fn run_with_answer_fn(
    net: &QueryNetwork,
    oracle: OracleInstance,
    mut answer: impl FnMut(usize, usize) -> bool,
    keep_trace: bool,
) -> Result<RunTrace> {
    check_oracle(net, &oracle)?;
    let mut state = match oracle {
        OracleInstance::Qex(c, dist) => prepare_qex(c, dist, net.m())?,
        OracleInstance::Qmq(_) => QuantumState::zero(net.m())?,
    };
    let mut pre_query = Vec::new();
    let mut t = 0;
    for stage in net.stages() {
        match stage {
            Stage::Dense(u) => state.apply_dense(u)?,
            Stage::Gates(gates) => gates.iter().try_for_each(|g| state.apply_gate(g))?,
            Stage::Oracle => {
                if keep_trace {
                    pre_query.push(state.clone());
                }
                apply_answers(&mut state, net.n(), |x| answer(t, x))?;
                t += 1;
            }
            Stage::Qex => {}
        }
    }
    Ok(RunTrace {
        final_state: state,
        pre_query,
    })
}

/// Runs every stage of `net` in order from `|0^m⟩` (or from the example
/// state, for a network that starts with a QEX stage).
pub fn run_network(net: &QueryNetwork, oracle: OracleInstance) -> Result<RunTrace> {
    let c = oracle.concept();
    run_with_answer_fn(net, oracle, |_, x| c.eval(x), true)
}

/// Final state only, without keeping the per-query trace.
pub fn final_state(net: &QueryNetwork, oracle: OracleInstance) -> Result<QuantumState> {
    let c = oracle.concept();
    Ok(run_with_answer_fn(net, oracle, |_, x| c.eval(x), false)?.final_state)
}
