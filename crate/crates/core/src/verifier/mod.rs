//! Case registry, input generation, the seeded suite runner and the
//! constant-tightness table.

mod cases;
mod check;
mod generate;
mod suite;
mod tightness;

pub use cases::{FunctionNeed, InequalityCase, Operands, Requirements, VectorNeed};
pub use check::{
    check_case, CaseContext, CaseInputs, SpectralBounds, VerificationReport, COMMUTATOR_TOL, REQUIREMENT_TOL,
};
pub use generate::{alpha_grid, generate_inputs, LAMBDA_GRID, SANDWICH_GRID, SEQUENCE_EXPONENTS, UNIT_SANDWICH_GRID};
pub use suite::{run_suite, trial_seed, CaseSummary, FailureRecord, SuiteConfig, SuiteReport, TrialError, CSV_HEADER};
pub use tightness::{tightness_table, TightnessRecord, DOMINANCE_TOL};
