//! Seeded property suites over every module, as run by `qlearn verify`.
//!
//! Each suite is a list of named checks. A check records whether it passed
//! and a short deterministic detail string, so identical options always
//! produce identical reports.

mod classical_suites;
mod quantum_suites;

pub use classical_suites::{
    forced_queries, greedy_worst_case, pac_rates, pac_trial, ForcedQueries, PacRates, PacTrial,
};
pub use quantum_suites::{hybrid_trial, HybridTrial, HYBRID_EPSILON};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Parity,
    Degree,
    Hybrid,
    Distinguish,
    Adversary,
    Upper,
    Gamma,
    Pac,
    Gershgorin,
    Gv,
    Consistency,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Parity,
        Suite::Degree,
        Suite::Hybrid,
        Suite::Distinguish,
        Suite::Adversary,
        Suite::Upper,
        Suite::Gamma,
        Suite::Pac,
        Suite::Gershgorin,
        Suite::Gv,
        Suite::Consistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Parity => "parity",
            Suite::Degree => "degree",
            Suite::Hybrid => "hybrid",
            Suite::Distinguish => "distinguish",
            Suite::Adversary => "adversary",
            Suite::Upper => "upper",
            Suite::Gamma => "gamma",
            Suite::Pac => "pac",
            Suite::Gershgorin => "gershgorin",
            Suite::Gv => "gv",
            Suite::Consistency => "consistency",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::Parse(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Base seed for every randomized check.
    pub seed: u64,
    /// Flip one answer bit of the membership oracle inside the parity suite.
    pub inject_fault: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub(crate) fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn from_checks(suite: Suite, checks: Vec<Check>) -> Self {
        Self {
            suite,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Parity => quantum_suites::parity(opts)?,
        Suite::Degree => quantum_suites::degree(opts)?,
        Suite::Hybrid => quantum_suites::hybrid(opts)?,
        Suite::Distinguish => quantum_suites::distinguish(opts)?,
        Suite::Adversary => classical_suites::adversary(opts)?,
        Suite::Upper => classical_suites::upper()?,
        Suite::Gamma => classical_suites::gamma()?,
        Suite::Pac => classical_suites::pac(opts)?,
        Suite::Gershgorin => quantum_suites::gershgorin(opts)?,
        Suite::Gv => classical_suites::gv()?,
        Suite::Consistency => classical_suites::consistency(opts)?,
    };
    Ok(SuiteReport::from_checks(suite, checks))
}

/// Runs the selected suites (all of them when `only` is empty) in canonical order.
pub fn run_suites(only: &[Suite], opts: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    Suite::ALL
        .into_iter()
        .filter(|s| only.is_empty() || only.contains(s))
        .map(|s| run_suite(s, opts))
        .collect()
}
