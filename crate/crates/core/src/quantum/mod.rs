//! Dense state-vector simulation of quantum query networks.
//!
//! Register layout: qubits `0..n` hold the query string `x` (qubit 0 is the
//! most significant bit), qubit `n` is the answer bit `b`, and any further
//! qubits are workspace.

mod gates;
mod hybrid;
mod measure;
mod network;
pub mod random;
mod sim;
mod state;

pub use gates::{DenseUnitary, Gate, MAX_DENSE_QUBITS};
pub use hybrid::{
    distinguished_count, query_magnitudes, run_with_overrides, saturating_overrides, DistinguishedCount,
    OverrideTable, QueryMagnitudes,
};
pub use measure::{euclidean_distance, measure_distribution, total_variation, Marginal};
pub use network::{Decode, DecodeRule, QueryNetwork, Stage};
pub use sim::{apply_qmq, final_state, prepare_qex, run_network, OracleInstance, RunTrace};
pub use state::{max_qubits, QuantumState, NORM_TOLERANCE};
