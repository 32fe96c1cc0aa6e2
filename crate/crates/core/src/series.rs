//! Truncated Taylor series at the origin.
//!
//! A [`TruncatedSeries`] of order `M` stores the coefficients of
//! `1, z, …, z^M`. Every operation here is exact on those coefficients up to
//! floating-point roundoff: the coefficient of `z^k` in a product, power,
//! logarithm or composition depends only on input coefficients of degree
//! `≤ k`.

use nalgebra::{Complex, ComplexField};

use crate::error::{Error, Result};
use crate::maps::LinearFractionalMap;
use crate::scalar::{cabs, cone, creal, czero, on_branch_cut, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<T: Real> {
    coeffs: Vec<Complex<T>>,
}

/// Result of [`TruncatedSeries::compose`] together with a bound on the
/// contribution of the discarded terms `f_n g^n`, `n > M`.
#[derive(Debug, Clone, PartialEq)]
pub struct Composition<T: Real> {
    pub series: TruncatedSeries<T>,
    /// `|g(0)|^{M+1} · max|f_n| / (1 − |g(0)|)`; zero when `g(0) = 0`.
    pub tail_bound: T,
}

impl<T: Real> TruncatedSeries<T> {
    /// Series with the given coefficients; order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    /// Coefficients taken from `coeffs` and zero-padded (or cut) to `order`.
    pub fn from_slice(coeffs: &[Complex<T>], order: usize) -> Self {
        let mut v = vec![czero(); order + 1];
        for (dst, src) in v.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        Self { coeffs: v }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![czero(); order + 1],
        }
    }

    pub fn constant(c: Complex<T>, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(cone(), order)
    }

    /// The series `z`.
    pub fn variable(order: usize) -> Self {
        Self::linear(czero(), cone(), order)
    }

    /// `c0 + c1·z`.
    pub fn linear(c0: Complex<T>, c1: Complex<T>, order: usize) -> Self {
        let mut s = Self::constant(c0, order);
        if order >= 1 {
            s.coeffs[1] = c1;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex<T> {
        self.coeffs.get(k).copied().unwrap_or_else(czero)
    }

    /// Same coefficients at a different order (zero padded or cut).
    pub fn retruncate(&self, order: usize) -> Self {
        Self::from_slice(&self.coeffs, order)
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(czero(), |acc, &c| acc * z + c)
    }

    pub fn max_abs_coeff(&self) -> T {
        self.coeffs
            .iter()
            .map(|c| cabs(*c))
            .fold(T::zero(), |m, x| if x > m { x } else { m })
    }

    /// Largest coefficient-wise distance; orders must agree.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check_order(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| cabs(*a - *b))
            .fold(T::zero(), |m, x| if x > m { x } else { m }))
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| *a + *b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| *a - *b).collect(),
        })
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| *c * s).collect(),
        }
    }

    /// Cauchy product truncated to degree `M`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let m = self.order();
        let mut out = vec![czero(); m + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == czero() {
                continue;
            }
            for (o, &b) in out[i..].iter_mut().zip(&other.coeffs) {
                *o += a * b;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Multiplication by the linear polynomial `c0 + c1·z`, in `O(M)`.
    pub fn mul_linear(&self, c0: Complex<T>, c1: Complex<T>) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut prev = czero();
        for &x in &self.coeffs {
            out.push(c0 * x + c1 * prev);
            prev = x;
        }
        Self { coeffs: out }
    }

    /// Division by the linear polynomial `c0 + c1·z` (`c0 ≠ 0`), in `O(M)`.
    pub fn div_linear(&self, c0: Complex<T>, c1: Complex<T>) -> Result<Self> {
        if c0 == czero() {
            return Err(Error::DivisionByZero);
        }
        let inv = cone::<T>() / c0;
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut prev = czero();
        for &x in &self.coeffs {
            let y = (x - c1 * prev) * inv;
            out.push(y);
            prev = y;
        }
        Ok(Self { coeffs: out })
    }

    /// `self / other`, requires `other(0) ≠ 0`.
    pub fn divide(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let c0 = other.coeffs[0];
        if c0 == czero() {
            return Err(Error::DivisionByZero);
        }
        let inv = cone::<T>() / c0;
        let m = self.order();
        let mut q: Vec<Complex<T>> = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut s = self.coeffs[k];
            for j in 0..k {
                s -= q[j] * other.coeffs[k - j];
            }
            q.push(s * inv);
        }
        Ok(Self { coeffs: q })
    }

    /// `f^n` by binary powering; `n = 0` gives the constant 1.
    pub fn power_int(&self, n: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.multiply(&base).expect("equal orders");
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base).expect("equal orders");
            }
        }
        result
    }

    pub fn derivative(&self) -> Self {
        let m = self.order();
        let mut out = vec![czero(); m + 1];
        for k in 1..=m {
            out[k - 1] = self.coeffs[k] * creal(T::lit(k as f64));
        }
        Self { coeffs: out }
    }

    /// Antiderivative with the given constant term; the top coefficient of
    /// `self` falls off the end.
    pub fn integral(&self, constant: Complex<T>) -> Self {
        let m = self.order();
        let mut out = vec![czero(); m + 1];
        out[0] = constant;
        for k in 1..=m {
            out[k] = self.coeffs[k - 1] / creal(T::lit(k as f64));
        }
        Self { coeffs: out }
    }

    /// Principal logarithm: `L(0) = Log f(0)` and `L' = f'/f`.
    pub fn log_principal(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if on_branch_cut(c0) {
            return Err(Error::BranchCut(format!("{c0}")));
        }
        let q = self.derivative().divide(self)?;
        Ok(q.integral(c0.ln()))
    }

    /// `exp(f)` via `E' = f' E`.
    pub fn exp(&self) -> Self {
        let m = self.order();
        let mut e = Vec::with_capacity(m + 1);
        e.push(self.coeffs[0].exp());
        for k in 1..=m {
            let mut s = czero::<T>();
            for j in 1..=k {
                s += self.coeffs[j] * creal(T::lit(j as f64)) * e[k - j];
            }
            e.push(s / creal(T::lit(k as f64)));
        }
        Self { coeffs: e }
    }

    /// `f^γ = exp(γ · Log f)`; `γ = 1` returns `f` unchanged.
    pub fn pow_real(&self, gamma: T) -> Result<Self> {
        if gamma == T::one() {
            return Ok(self.clone());
        }
        Ok(self.log_principal()?.scale(creal(gamma)).exp())
    }

    /// `f ∘ g = Σ_{n ≤ M} f_n g^n` by Horner's scheme.
    ///
    /// Exact to degree `M` when `g(0) = 0`. Otherwise the discarded terms are
    /// bounded by [`Composition::tail_bound`], which is only meaningful when
    /// the function `f` represents is analytic past `sup |g|`.
    pub fn compose(&self, g: &Self) -> Result<Composition<T>> {
        self.check_order(g)?;
        let g0 = cabs(g.coeffs[0]);
        if g0 >= T::one() {
            return Err(Error::CompositionOutOfDomain(g0.to_f64()));
        }
        let m = self.order();
        let mut acc = Self::constant(self.coeffs[m], m);
        for k in (0..m).rev() {
            acc = acc.multiply(g)?;
            acc.coeffs[0] += self.coeffs[k];
        }
        let tail_bound = if g0 == T::zero() {
            T::zero()
        } else {
            g0.powi((m + 1) as i32) * self.max_abs_coeff() / (T::one() - g0)
        };
        Ok(Composition {
            series: acc,
            tail_bound,
        })
    }

    /// Taylor coefficients of `(az + b)/(cz + d)`.
    pub fn from_lfm(map: &LinearFractionalMap<T>, order: usize) -> Result<Self> {
        let [a, b, c, d] = map.coefficients();
        if d == czero() {
            return Err(Error::ZeroDenominator);
        }
        Self::linear(b, a, order).div_linear(d, c)
    }
}
