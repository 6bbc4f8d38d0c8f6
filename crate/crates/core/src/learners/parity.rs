use crate::concept::MAX_QUANTUM_N;
use crate::error::{Error, Result};
use crate::quantum::{Decode, Gate, QueryNetwork, Stage};

/// One-query exact learner for the parity class on `n` bits.
///
/// The answer qubit is prepared in `(|0⟩ − |1⟩)/√2` so each oracle call
/// kicks back the phase `(−1)^{a·x}`; Hadamards on the query register then
/// rotate `Σ_x (−1)^{a·x}|x⟩` onto `|a⟩`.
pub fn build_parity_learner(n: usize) -> Result<QueryNetwork> {
    if n == 0 || n > MAX_QUANTUM_N {
        return Err(Error::invalid(format!("n = {n} outside 1..={MAX_QUANTUM_N}")));
    }
    let mut prepare = vec![Gate::X(n)];
    prepare.extend((0..=n).map(Gate::H));
    QueryNetwork::new(
        n + 1,
        n,
        vec![
            Stage::Gates(prepare),
            Stage::Oracle,
            Stage::Gates((0..n).map(Gate::H).collect()),
        ],
        Decode::parity(n),
    )
}
