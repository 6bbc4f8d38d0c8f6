//! Desk-scale laboratory for classical and quantum exact and PAC learning.
//!
//! Concepts are explicit truth tables over `{0,1}^n`, small enough that every
//! combinatorial quantity (`γ̂`, VC dimension) is computed exactly and every
//! quantum query network is simulated on a dense state vector.

pub mod bounds;
pub mod classical;
pub mod concept;
pub mod error;
pub mod learners;
pub mod quantum;
pub mod verify;

pub use concept::{Concept, ConceptClass, Distribution};
pub use error::{Error, Result};
