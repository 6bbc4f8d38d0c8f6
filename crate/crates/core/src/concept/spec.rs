//! JSON description of a concept class:
//! `{"n": 2, "kind": "explicit", "tables": ["8", "4"]}`.
//!
//! Tables are hex strings of `2^n` bits with index 0 in the most significant
//! bit; for `n < 2` the table sits in the top bits of a single nibble and the
//! remaining bits must be zero. `tables` is only read for `"explicit"`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Concept, ConceptClass};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Parity,
    PointsPlusZero,
    All,
    Conjunctions,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSpec {
    pub n: usize,
    pub kind: ClassKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<String>,
}

impl ClassSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<ConceptClass> {
        match self.kind {
            ClassKind::Parity => ConceptClass::parity_class(self.n),
            ClassKind::PointsPlusZero => ConceptClass::points_plus_zero(self.n),
            ClassKind::All => ConceptClass::all_functions(self.n),
            ClassKind::Conjunctions => ConceptClass::conjunctions(self.n),
            ClassKind::Explicit => {
                if self.tables.is_empty() {
                    return Err(Error::Parse("explicit class needs \"tables\"".into()));
                }
                ConceptClass::new(
                    self.tables
                        .iter()
                        .map(|t| Concept::from_hex(self.n, t))
                        .collect::<Result<_>>()?,
                )
            }
        }
    }

    /// Describes an existing class explicitly.
    pub fn explicit(class: &ConceptClass) -> Self {
        Self {
            n: class.n(),
            kind: ClassKind::Explicit,
            tables: class.iter().map(Concept::to_hex).collect(),
        }
    }

    pub fn label(&self) -> String {
        let kind = match self.kind {
            ClassKind::Parity => "parity",
            ClassKind::PointsPlusZero => "points_plus_zero",
            ClassKind::All => "all",
            ClassKind::Conjunctions => "conjunctions",
            ClassKind::Explicit => "explicit",
        };
        format!("{kind} n={}", self.n)
    }
}

/// Inline form `"<kind> n=<n>"`, e.g. `"parity n=3"`.
impl FromStr for ClassSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let (Some(kind), Some(n), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!("expected \"<kind> n=<n>\", got {s:?}")));
        };
        let kind: ClassKind = serde_json::from_value(serde_json::Value::String(kind.into()))
            .map_err(|_| Error::Parse(format!("unknown class kind {kind:?}")))?;
        if kind == ClassKind::Explicit {
            return Err(Error::Parse("explicit classes must come from a file".into()));
        }
        let n = n
            .strip_prefix("n=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad size {n:?}, expected n=<int>")))?;
        Ok(Self {
            n,
            kind,
            tables: Vec::new(),
        })
    }
}
