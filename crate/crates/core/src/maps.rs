//! Linear fractional maps `φ(z) = (az + b)/(cz + d)` and their algebra.

use nalgebra::{Complex, ComplexField};

use crate::error::{Error, Result};
use crate::scalar::{cabs, cone, cplx, czero, Real};

/// Number of boundary points used by the sampling cross-check.
pub const BOUNDARY_SAMPLES: usize = 4096;

/// A non-degenerate linear fractional map. Coefficients are projective: two
/// maps whose coefficient vectors differ by a nonzero scalar are the same map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFractionalMap<T: Real> {
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
}

/// Outcome of [`LinearFractionalMap::validate_self_map`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfMapDiagnostic<T> {
    pub is_self_map: bool,
    /// `|b·conj(d) − a·conj(c)| + |ad − bc|`
    pub criterion_lhs: T,
    /// `|d|² − |c|²`
    pub criterion_rhs: T,
    /// Equality in the criterion: the map is an automorphism of the disk.
    pub is_automorphism: bool,
    /// Maximum of `|φ|` over [`BOUNDARY_SAMPLES`] equally spaced boundary points.
    pub boundary_max: T,
}

impl<T: Real> LinearFractionalMap<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Result<Self> {
        let det = a * d - b * c;
        let scale = cabs(a) * cabs(d) + cabs(b) * cabs(c);
        if scale == T::zero() || cabs(det) <= T::lit(8.0) * T::unit_roundoff() * scale {
            return Err(Error::ConstantMap);
        }
        Ok(Self { a, b, c, d })
    }

    /// Convenience constructor from real coefficients.
    pub fn real(a: T, b: T, c: T, d: T) -> Result<Self> {
        let r = |x| cplx(x, T::zero());
        Self::new(r(a), r(b), r(c), r(d))
    }

    pub fn identity() -> Self {
        Self {
            a: cone(),
            b: czero(),
            c: czero(),
            d: cone(),
        }
    }

    /// `z ↦ λz`.
    pub fn rotation(lambda: Complex<T>) -> Result<Self> {
        Self::new(lambda, czero(), czero(), cone())
    }

    /// `z ↦ λ(z + u)/(1 + ū z)`; an automorphism when `|λ| = 1`, `|u| < 1`.
    pub fn automorphism(lambda: Complex<T>, u: Complex<T>) -> Result<Self> {
        Self::new(lambda, lambda * u, u.conj(), cone())
    }

    pub fn coefficients(&self) -> [Complex<T>; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn determinant(&self) -> Complex<T> {
        self.a * self.d - self.b * self.c
    }

    pub fn evaluate(&self, z: Complex<T>) -> Result<Complex<T>> {
        let den = self.c * z + self.d;
        let scale = cabs(self.c) * cabs(z) + cabs(self.d);
        if cabs(den) <= T::lit(4.0) * T::unit_roundoff() * scale {
            return Err(Error::Pole);
        }
        Ok((self.a * z + self.b) / den)
    }

    /// `self ∘ inner`, i.e. `z ↦ self(inner(z))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (inner.a, inner.b, inner.c, inner.d);
        // Determinants multiply, so the product of non-degenerate maps is non-degenerate.
        Self {
            a: a1 * a2 + b1 * c2,
            b: a1 * b2 + b1 * d2,
            c: c1 * a2 + d1 * c2,
            d: c1 * b2 + d1 * d2,
        }
    }

    /// Adjugate of the coefficient matrix.
    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `σ(z) = (āz − c̄)/(−b̄z + d̄)`.
    pub fn krein_adjoint(&self) -> Self {
        Self {
            a: self.a.conj(),
            b: -self.c.conj(),
            c: -self.b.conj(),
            d: self.d.conj(),
        }
    }

    /// Coefficients scaled so that `d = 1` (or `c = 1` when `d = 0`).
    pub fn normalized(&self) -> Self {
        let s = if self.d != czero() { self.d } else { self.c };
        Self {
            a: self.a / s,
            b: self.b / s,
            c: self.c / s,
            d: self.d / s,
        }
    }

    /// Projective comparison: every 2×2 minor of the stacked coefficient
    /// vectors must vanish relative to the vector norms.
    pub fn approx_eq(&self, other: &Self, rel_tol: T) -> bool {
        self.projective_distance(other) <= rel_tol
    }

    /// Largest 2×2 minor of the stacked coefficient vectors divided by the
    /// product of their norms; zero iff the maps coincide.
    pub fn projective_distance(&self, other: &Self) -> T {
        let x = self.coefficients();
        let y = other.coefficients();
        let norm = |v: &[Complex<T>; 4]| v.iter().map(|z| z.norm_sqr()).fold(T::zero(), |s, q| s + q).sqrt();
        let scale = norm(&x) * norm(&y);
        let mut worst = T::zero();
        for i in 0..4 {
            for j in (i + 1)..4 {
                let minor = cabs(x[i] * y[j] - x[j] * y[i]);
                if minor > worst {
                    worst = minor;
                }
            }
        }
        worst / scale
    }

    /// Closed-form self-map criterion
    /// `|b d̄ − a c̄| + |ad − bc| ≤ |d|² − |c|²`,
    /// with boundary sampling recorded as a cross-check.
    pub fn validate_self_map(&self) -> SelfMapDiagnostic<T> {
        let lhs = cabs(self.b * self.d.conj() - self.a * self.c.conj()) + cabs(self.determinant());
        let rhs = self.d.norm_sqr() - self.c.norm_sqr();
        let slack = T::lit(16.0)
            * T::unit_roundoff()
            * (self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr());
        let is_self_map = rhs > T::zero() && lhs <= rhs + slack;
        SelfMapDiagnostic {
            is_self_map,
            criterion_lhs: lhs,
            criterion_rhs: rhs,
            is_automorphism: is_self_map && (lhs - rhs).abs() <= slack,
            boundary_max: self.boundary_max(BOUNDARY_SAMPLES),
        }
    }

    /// `Ok(())` for self-maps, otherwise [`Error::NotSelfMap`].
    pub fn require_self_map(&self) -> Result<()> {
        let diag = self.validate_self_map();
        if diag.is_self_map {
            Ok(())
        } else {
            Err(Error::NotSelfMap(format!(
                "criterion {} > {} (boundary max |φ| = {})",
                diag.criterion_lhs, diag.criterion_rhs, diag.boundary_max
            )))
        }
    }

    /// Maximum of `|φ(e^{iθ})|` over `samples` equally spaced angles; infinite
    /// if a sample hits a pole.
    pub fn boundary_max(&self, samples: usize) -> T {
        let mut worst = T::zero();
        for k in 0..samples {
            let theta = T::two_pi() * T::lit(k as f64) / T::lit(samples as f64);
            let z = cplx(theta.cos(), theta.sin());
            match self.evaluate(z) {
                Ok(w) => {
                    let m = w.modulus();
                    if m > worst {
                        worst = m;
                    }
                }
                Err(_) => return T::max_value().unwrap_or_else(|| T::lit(f64::MAX)),
            }
        }
        worst
    }

    /// `φ(0) = b/d`.
    pub fn value_at_zero(&self) -> Result<Complex<T>> {
        self.evaluate(czero())
    }
}
