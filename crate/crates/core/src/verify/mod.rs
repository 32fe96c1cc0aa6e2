//! Executable certificates for adjoint formulas.
//!
//! Each `run_*` function builds the relevant difference operator at
//! truncation orders `M` and `2M` and returns a [`VerificationReport`]:
//!
//! * [`run_exact_identity`]: `C_φ* = M_g C_σ M_h*` on `A²_α`, `α + 2 > 0`;
//! * [`run_finite_rank`]: the same difference has rank `≤` [`rank_bound`]
//!   on `A²_α`, `α + 2 ≤ 0`;
//! * [`run_compact_decay`]: compactness on power-law spaces, certified by
//!   `‖D e_n‖ → 0`;
//! * [`run_perturbation`]: the diagonal perturbation relating adjoints in
//!   two equivalent weighted spaces;
//! * [`run_heller_a`], [`run_heller_b`]: the `φ(0) = 0` and automorphism
//!   formulas modulo compacts.

mod checks;
mod heller;
mod perturbation;
mod report;
mod suite;
mod symbols;

pub use checks::{
    asymptotics_report, kernel_report, rank_bound, run_compact_decay, run_compact_decay_with, run_exact_identity,
    run_finite_rank, run_mode_consistency, DecayProfile,
};
pub use heller::{run_heller_a, run_heller_b};
pub use perturbation::{limit_ratio, perturbation_diagonal, run_perturbation, LimitRatio, OperatorRecipe};
pub use report::{Param, VerificationReport};
pub use suite::{run_suite, suite_checks, SuiteCheck};
pub use symbols::{cowen_difference, cowen_symbols, CowenSymbols, Mode};

/// Tolerance for exact identities (max-entry residual on leading blocks).
pub const IDENTITY_TOL: f64 = 1e-8;
/// Relative singular-value threshold for numerical rank.
pub const RANK_REL_TOL: f64 = 1e-8;
/// Required ratio between the last and the first band of a decay profile.
pub const DECAY_RATIO: f64 = 0.5;
/// A residual may grow by at most this factor when `M` doubles.
pub const CONVERGENCE_SLACK: f64 = 1.05;
/// Tolerance for coefficient-wise series identities.
pub const SERIES_IDENTITY_TOL: f64 = 1e-10;
/// Relative Cauchy gate for estimated limits `lim β₂(n)/β₁(n)`.
pub const CAUCHY_GATE: f64 = 0.05;
/// Cauchy gate for the weight asymptotics check.
pub const ASYMPTOTIC_GATE: f64 = 0.02;
/// Allowed distance of the asymptotic constant estimate from its limit.
pub const ASYMPTOTIC_CONSTANT_TOL: f64 = 0.01;
/// Kernel residual tolerance above the free degree.
pub const KERNEL_TOL: f64 = 1e-10;
/// Default truncation order.
pub const DEFAULT_TRUNCATION: usize = 128;

/// Residual pairs below this level are roundoff; their ordering carries no
/// information about finite-section convergence.
pub const ROUNDOFF_FLOOR: f64 = 1e-13;

/// `r(2M) ≤ 1.05 · r(M)`, or both at roundoff level.
pub fn converged(at_m: f64, at_2m: f64) -> bool {
    at_2m <= CONVERGENCE_SLACK * at_m || at_2m <= ROUNDOFF_FLOOR
}
