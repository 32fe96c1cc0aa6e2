//! Adjoints of linear fractional composition operators on weighted Hardy
//! spaces `H²(β)`.
//!
//! The crate builds finite sections of composition and multiplication
//! operators in the orthonormal monomial basis, generates the weight
//! sequences and reproducing kernels of the generalized weighted Bergman
//! spaces `A²_α` (every real `α`) and of power-law spaces, and certifies
//! adjoint formulas of the form `C_φ* = M_g C_σ M_h*`: exactly, modulo
//! finite rank, or modulo compact operators.
//!
//! All numerics are generic over [`Real`] (`f32`, `f64`); the `*64` aliases
//! below fix the scalar to `f64`, which the verification tolerances assume.

// Negated comparisons deliberately reject NaN; index loops mirror the recurrences.
#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::needless_range_loop,
    clippy::excessive_precision
)]

pub mod error;
pub mod kernels;
pub mod maps;
pub mod operators;
pub mod scalar;
pub mod series;
pub mod special;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use kernels::{KernelCoefficients, KernelResidual};
pub use maps::{LinearFractionalMap, SelfMapDiagnostic};
pub use operators::OperatorMatrix;
pub use scalar::{Cplx, Real};
pub use series::TruncatedSeries;
pub use verify::{CowenSymbols, Mode, VerificationReport};
pub use weights::{Regime, WeightSequence};

pub use nalgebra::Complex;

pub type Complex64 = Complex<f64>;
pub type Map64 = LinearFractionalMap<f64>;
pub type Series64 = TruncatedSeries<f64>;
pub type Weights64 = WeightSequence<f64>;
pub type Operator64 = OperatorMatrix<f64>;
pub type Kernel64 = KernelCoefficients<f64>;
pub type Symbols64 = CowenSymbols<f64>;

pub type Map32 = LinearFractionalMap<f32>;
pub type Series32 = TruncatedSeries<f32>;
pub type Weights32 = WeightSequence<f32>;
pub type Operator32 = OperatorMatrix<f32>;
