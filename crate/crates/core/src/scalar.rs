//! Scalar abstraction shared by every module.
//!
//! The numerical core is written once against [`Real`] and instantiated for
//! `f32` and `f64`. Complex quantities are `Complex<T>`; matrices are dense
//! `nalgebra` matrices over `Complex<T>`.

use std::fmt::{Debug, Display};

use nalgebra::{Complex, ComplexField, RealField};

/// Real scalar usable by the series, weight and operator code: `f32` or `f64`.
pub trait Real: RealField + Copy + Debug + Display + Send + Sync + 'static {
    /// Lossy conversion from a literal.
    fn lit(x: f64) -> Self;
    /// Lossy conversion to `f64`, used for reports.
    fn to_f64(self) -> f64;
    /// Unit roundoff of the type.
    fn unit_roundoff() -> Self;
}

impl Real for f64 {
    #[inline]
    fn lit(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn unit_roundoff() -> Self {
        f64::EPSILON
    }
}

impl Real for f32 {
    #[inline]
    fn lit(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
    #[inline]
    fn unit_roundoff() -> Self {
        f32::EPSILON
    }
}

/// Complex scalar over a [`Real`].
pub type Cplx<T> = Complex<T>;

#[inline]
pub(crate) fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn creal<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub(crate) fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub(crate) fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

#[inline]
pub(crate) fn cabs<T: Real>(z: Complex<T>) -> T {
    z.modulus()
}

/// `true` when `z` lies on the closed negative real axis, where the principal
/// logarithm is discontinuous or undefined.
#[inline]
pub(crate) fn on_branch_cut<T: Real>(z: Complex<T>) -> bool {
    z.im == T::zero() && z.re <= T::zero()
}
