//! Arithmetic behind the lower bound: the averaging inequality for
//! weighted knot tuples, exact audits of the inequalities used in the
//! counting argument, and the final linear system.

mod audit;
mod suite;
mod system;
mod tuple;

pub use audit::{claim_names, inequality_audit, ClaimResult, InequalityReport, MAX_AUDIT_Q};
pub use suite::{afschatting_suite, AfschattingReport};
pub use system::{feasibility_sweep, spectrum_solve, sweep_csv, FailedFlag, SpectrumSolution, SweepRow};
pub use tuple::{
    afschatting_bound, afschatting_brute, canonical_extremal, rebalance_step, rebalance_to_fixed, BruteMinimum,
    KnotTuple, MAX_BRUTE_B, MAX_BRUTE_K,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("out of range: {0}")]
    Range(String),
}
