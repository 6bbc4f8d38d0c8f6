//! Classical oracles (`MQ`, `EX`), adversaries, and learners.

mod exact;
mod oracle;
mod pac;

pub use exact::{
    greedy_exact_learner, queries_forced, run_exact, ExactRun, Greedy, QueryStrategy,
    RandomSplitting,
};
pub use oracle::{
    answer_majority_adversary, answer_similarity_adversary, AdversaryRule, ExampleOracle,
    LabeledExample, MembershipOracle,
};
pub use pac::{
    consistent_hypothesis, empirical_error, hard_pac_distribution, pac_consistent_learner,
    pac_sample_size, PacParams, PacRun,
};

use serde::Serialize;

/// One learner run as written to reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    /// Target table in hex, or `null` when answering adversarially.
    pub target: Option<String>,
    pub class: String,
    pub mode: String,
    pub queries: usize,
    pub hypothesis: Option<String>,
    pub success: bool,
    pub seed: u64,
}
