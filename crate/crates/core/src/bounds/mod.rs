//! Lower-bound machinery: acceptance polynomials, success matrices and
//! Gershgorin disks, Gilbert–Varshamov codes, and closed-form bounds.

mod gv;
mod matrix;
mod poly;
mod report;

pub use gv::{ball_volume, binary_entropy, gv_codebook, Codebook, GvChain, MAX_CODE_LENGTH};
pub use matrix::{
    diagonal_dominance_full_rank, numerical_rank, success_matrix, Disk, DominanceReport,
    SuccessMatrix, MAX_MATRIX_SIZE, RANK_THRESHOLD,
};
pub use poly::{
    acceptance_polynomial, acceptance_values, MultilinearPolynomial, OutcomeSet, MAX_POLY_VARS,
};
pub use report::{bound_report, BoundReport, BoundRow, ClassicalBounds, QuantumBounds};
