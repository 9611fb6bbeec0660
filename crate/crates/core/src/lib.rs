//! Operator means, reverse-Young constants and operator Aczél-type
//! inequalities, checked numerically on seeded random inputs.
//!
//! Matrices are complex Hermitian ([`HermitianMatrix`]); the Löwner order is
//! decided by the smallest eigenvalue of the difference with a relative
//! tolerance (see [`loewner_margin`]).

// Input guards are written `!(x > 0.0)` on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod functions;
pub mod linalg;
pub mod means;
pub mod sampler;
pub mod verifier;

pub use constants::{
    compare_remark, dragomir_bound, fm_bound, kantorovich, kantorovich_bound, ordering_scan, specht, specht_bound,
    BoundFamily, BoundKind, RemarkRow,
};
pub use error::{Error, Result};
pub use functions::{catalog, DecreasingFunction};
pub use linalg::{
    loewner_margin, quadratic_form, CMatrix, CVector, HermitianMatrix, Interval, LoewnerMargin, MatrixDocument, C64,
    DEFAULT_TOL,
};
pub use means::{arithmetic_mean, geometric_mean, Weight};
pub use sampler::{AczelSequences, SandwichPair};
pub use verifier::{
    check_case, run_suite, tightness_table, InequalityCase, SuiteConfig, SuiteReport, VerificationReport,
};
