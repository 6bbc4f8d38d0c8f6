//! Query networks: alternating unitary stages and oracle slots, plus the
//! rule that turns a final measurement outcome into a hypothesis.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::gates::{DenseUnitary, Gate, MAX_DENSE_QUBITS};
use super::state::check_qubits;
use crate::concept::{format_point, parse_point, Concept, MAX_QUANTUM_N};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "payload", rename_all = "lowercase")]
pub enum Stage {
    Dense(DenseUnitary),
    Gates(Vec<Gate>),
    /// A membership-query call `|x, b, y⟩ ↦ |x, b ⊕ c(x), y⟩`.
    Oracle,
    /// Example-oracle state preparation; only valid as the first stage.
    Qex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecodeRule {
    /// The measured n-bit value `a` names the parity concept `a·x`.
    Parity,
    /// Measured bit string ↦ hex truth table. Missing outcomes are undefined.
    Table(BTreeMap<String, String>),
    /// Every outcome yields the same hex truth table.
    Constant(String),
}

/// Which qubits are measured at the end and how the outcome is read.
/// The first listed qubit is the most significant bit of the outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Decode {
    pub qubits: Vec<usize>,
    pub rule: DecodeRule,
}

impl Decode {
    /// Measures the first `n` qubits and reads them as a parity index.
    pub fn parity(n: usize) -> Self {
        Self {
            qubits: (0..n).collect(),
            rule: DecodeRule::Parity,
        }
    }

    pub fn constant(c: &Concept) -> Self {
        Self {
            qubits: Vec::new(),
            rule: DecodeRule::Constant(c.to_hex()),
        }
    }

    fn resolve(&self, m: usize, n: usize) -> Result<Vec<Option<Concept>>> {
        let k = self.qubits.len();
        let mut seen = vec![false; m];
        for &q in &self.qubits {
            if q >= m || std::mem::replace(&mut seen[q], true) {
                return Err(Error::invalid(format!(
                    "decode qubit {q} is out of range or repeated on {m} qubits"
                )));
            }
        }
        let outcomes = 1usize << k;
        match &self.rule {
            DecodeRule::Parity => {
                if k != n {
                    return Err(Error::invalid(format!(
                        "parity decoding reads n = {n} qubits, not {k}"
                    )));
                }
                (0..outcomes)
                    .map(|a| Concept::parity(n, a).map(Some))
                    .collect()
            }
            DecodeRule::Constant(hex) => {
                let c = Concept::from_hex(n, hex)?;
                Ok(vec![Some(c); outcomes])
            }
            DecodeRule::Table(map) => {
                let mut table = vec![None; outcomes];
                for (outcome, hex) in map {
                    let v = parse_point(k, outcome)?;
                    table[v] = Some(Concept::from_hex(n, hex)?);
                }
                Ok(table)
            }
        }
    }
}

/// Serialized shape of a network file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkFile {
    m: usize,
    n: usize,
    stages: Vec<Stage>,
    decode: Decode,
}

/// A validated query network on `m` qubits whose oracle answers concepts
/// over `{0,1}^n`. Qubits `0..n` hold the query, qubit `n` the answer bit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NetworkFile", into = "NetworkFile")]
pub struct QueryNetwork {
    m: usize,
    n: usize,
    stages: Vec<Stage>,
    decode: Decode,
    decoder: Vec<Option<Concept>>,
}

impl QueryNetwork {
    pub fn new(m: usize, n: usize, stages: Vec<Stage>, decode: Decode) -> Result<Self> {
        check_qubits(m)?;
        if n == 0 || n > MAX_QUANTUM_N {
            return Err(Error::invalid(format!("n = {n} outside 1..={MAX_QUANTUM_N}")));
        }
        if m < n + 1 {
            return Err(Error::invalid(format!(
                "{m} qubits cannot hold an {n}-bit query and an answer bit"
            )));
        }
        let mut saw_oracle = false;
        for (i, stage) in stages.iter().enumerate() {
            match stage {
                Stage::Dense(u) => {
                    if m > MAX_DENSE_QUBITS {
                        return Err(Error::CapExceeded {
                            what: "qubits in a dense stage",
                            limit: MAX_DENSE_QUBITS,
                            got: m,
                        });
                    }
                    if u.dim() != 1 << m {
                        return Err(Error::DimensionMismatch {
                            expected: 1 << m,
                            got: u.dim(),
                        });
                    }
                    let deviation = u.unitarity_deviation();
                    if deviation > super::state::NORM_TOLERANCE {
                        return Err(Error::NonUnitary { stage: i, deviation });
                    }
                }
                Stage::Gates(gates) => gates.iter().try_for_each(|g| g.check(m))?,
                Stage::Oracle => saw_oracle = true,
                Stage::Qex if i != 0 => {
                    return Err(Error::invalid(format!(
                        "an example-oracle stage must come first, found one at stage {i}"
                    )))
                }
                Stage::Qex => {}
            }
        }
        if saw_oracle && matches!(stages.first(), Some(Stage::Qex)) {
            return Err(Error::invalid(
                "a network uses either membership-query slots or an example oracle, not both",
            ));
        }
        let decoder = decode.resolve(m, n)?;
        Ok(Self {
            m,
            n,
            stages,
            decode,
            decoder,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("networks always serialize")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn decode(&self) -> &Decode {
        &self.decode
    }

    /// Number of membership-query slots `T`.
    pub fn query_count(&self) -> usize {
        self.stages.iter().filter(|s| matches!(s, Stage::Oracle)).count()
    }

    pub fn uses_qex(&self) -> bool {
        matches!(self.stages.first(), Some(Stage::Qex))
    }

    /// Hypothesis for a measured outcome value, `None` where undefined.
    pub fn decode_outcome(&self, outcome: usize) -> Option<&Concept> {
        self.decoder.get(outcome).and_then(Option::as_ref)
    }

    /// Formats an outcome value as the bit string of the decode qubits.
    pub fn outcome_label(&self, outcome: usize) -> String {
        format_point(self.decode.qubits.len(), outcome)
    }
}

impl TryFrom<NetworkFile> for QueryNetwork {
    type Error = Error;

    fn try_from(f: NetworkFile) -> Result<Self> {
        QueryNetwork::new(f.m, f.n, f.stages, f.decode)
    }
}

impl From<QueryNetwork> for NetworkFile {
    fn from(net: QueryNetwork) -> Self {
        NetworkFile {
            m: net.m,
            n: net.n,
            stages: net.stages,
            decode: net.decode,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deutsch() -> QueryNetwork {
        QueryNetwork::new(
            2,
            1,
            vec![
                Stage::Gates(vec![Gate::X(1), Gate::H(0), Gate::H(1)]),
                Stage::Oracle,
                Stage::Gates(vec![Gate::H(0)]),
            ],
            Decode::parity(1),
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip() {
        let net = deutsch();
        let text = net.to_json();
        assert!(text.contains(r#""type": "oracle""#));
        assert_eq!(QueryNetwork::from_json(&text).unwrap(), net);
        assert_eq!(net.query_count(), 1);
    }

    #[test]
    fn parses_hand_written_file() {
        let text = r#"{
            "m": 2, "n": 1,
            "stages": [
                {"type": "gates", "payload": [{"h": 0}]},
                {"type": "oracle"},
                {"type": "dense", "payload": [[[1,0],[0,0],[0,0],[0,0]],
                                              [[0,0],[1,0],[0,0],[0,0]],
                                              [[0,0],[0,0],[0,0],[1,0]],
                                              [[0,0],[0,0],[1,0],[0,0]]]}
            ],
            "decode": {"qubits": [0], "rule": {"table": {"0": "0", "1": "4"}}}
        }"#;
        let net = QueryNetwork::from_json(text).unwrap();
        assert_eq!(net.decode_outcome(1).unwrap().to_string(), "01");
        assert_eq!(net.outcome_label(1), "1");
    }

    #[test]
    fn rejects_malformed_networks() {
        let bad_dense = DenseUnitary::from_row_major(
            4,
            vec![num_complex::Complex64::new(1.0, 0.0); 16],
        )
        .unwrap();
        let err = QueryNetwork::new(2, 1, vec![Stage::Dense(bad_dense)], Decode::parity(1))
            .unwrap_err();
        assert!(matches!(err, Error::NonUnitary { stage: 0, .. }));

        let late_qex = vec![Stage::Gates(vec![Gate::H(0)]), Stage::Qex];
        assert!(QueryNetwork::new(2, 1, late_qex, Decode::parity(1)).is_err());

        let mixed = vec![Stage::Qex, Stage::Oracle];
        assert!(QueryNetwork::new(2, 1, mixed, Decode::parity(1)).is_err());

        assert!(QueryNetwork::new(1, 1, vec![], Decode::parity(1)).is_err());
        assert!(QueryNetwork::new(3, 2, vec![], Decode::parity(1)).is_err());
        let repeated = Decode {
            qubits: vec![0, 0],
            rule: DecodeRule::Parity,
        };
        assert!(QueryNetwork::new(3, 2, vec![], repeated).is_err());
        assert!(QueryNetwork::new(20, 2, vec![], Decode::parity(2)).unwrap_err().is_cap());
    }

    #[test]
    fn table_decode_leaves_gaps_undefined() {
        let mut map = BTreeMap::new();
        map.insert("11".to_string(), "8".to_string());
        let decode = Decode {
            qubits: vec![1, 0],
            rule: DecodeRule::Table(map),
        };
        let net = QueryNetwork::new(3, 2, vec![], decode).unwrap();
        assert!(net.decode_outcome(0).is_none());
        assert_eq!(net.decode_outcome(3).unwrap().to_string(), "1000");
    }
}
