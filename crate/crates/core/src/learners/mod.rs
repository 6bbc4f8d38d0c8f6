//! Quantum learners and a harness that certifies their success probability.

mod certify;
mod parity;
mod qex;

pub use certify::{certify_learner, Certification, TargetResult, DEFAULT_THRESHOLD};
pub use parity::build_parity_learner;
pub use qex::{qex_sample, qex_sampling_learner};
