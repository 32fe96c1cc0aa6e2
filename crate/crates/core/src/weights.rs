//! Weight sequences `β(n) = ‖z^n‖` of weighted Hardy spaces `H²(β)`.
//!
//! The generalized weighted Bergman spaces `A²_α` come in three regimes,
//! depending on `s = α + 2`:
//!
//! * type A, `s > 0`: `β(m)² = m! Γ(s) / Γ(m + s)`;
//! * type B, `−N < s < −N + 1`: `β(m)² = (−1)^N m! Γ(s) / Γ(m + s)` for `m > N`;
//! * type C, `s = −N`: `β(m)² = 1 / A_m` for `m > N`, where
//!   `(z − 1)^N log(1/(1 − z)) = Σ A_k z^k`.
//!
//! In types B and C the entries `m ≤ N` are set to 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::{ln_gamma, ln_gamma_ratio, ln_gamma_signed};

/// Which formula generated a [`WeightSequence`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime<T> {
    TypeA { alpha: T },
    TypeB { alpha: T, n: usize },
    TypeC { alpha: T, n: usize },
    PowerLaw { t: T, ell: T },
    Custom,
}

impl<T: Real> Regime<T> {
    /// Classify `α` by the sign and integrality of `α + 2`.
    pub fn for_alpha(alpha: T) -> Self {
        let s = alpha + T::lit(2.0);
        if s > T::zero() {
            Regime::TypeA { alpha }
        } else if s == s.round() {
            Regime::TypeC {
                alpha,
                n: (-s).to_f64().round() as usize,
            }
        } else {
            Regime::TypeB {
                alpha,
                n: (-s).ceil().to_f64() as usize,
            }
        }
    }

    pub fn alpha(&self) -> Option<T> {
        match *self {
            Regime::TypeA { alpha } | Regime::TypeB { alpha, .. } | Regime::TypeC { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    /// `N` for types B and C.
    pub fn low_order(&self) -> Option<usize> {
        match *self {
            Regime::TypeB { n, .. } | Regime::TypeC { n, .. } => Some(n),
            _ => None,
        }
    }

    /// Exponent `e` with `β(n) ~ const · n^e`.
    pub fn growth_exponent(&self) -> Option<T> {
        match *self {
            Regime::PowerLaw { t, .. } => Some(t),
            Regime::Custom => None,
            r => r.alpha().map(|a| -(a + T::one()) / T::lit(2.0)),
        }
    }

    /// Closed-form `lim β(n) / n^e` for `e` = [`Self::growth_exponent`].
    pub fn asymptotic_constant(&self) -> Option<T> {
        match *self {
            Regime::PowerLaw { ell, .. } => Some(ell),
            Regime::TypeA { alpha } | Regime::TypeB { alpha, .. } => {
                let (lg, _) = ln_gamma_signed(alpha + T::lit(2.0)).ok()?;
                Some((lg / T::lit(2.0)).exp())
            }
            // 1/A_m ~ m^{N+1} / N!
            Regime::TypeC { n, .. } => {
                let lf = ln_gamma(T::lit((n + 1) as f64)).ok()?;
                Some((-lf / T::lit(2.0)).exp())
            }
            Regime::Custom => None,
        }
    }
}

/// Positive weights `β(0), …, β(M)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence<T: Real> {
    beta: Vec<T>,
    regime: Regime<T>,
}

impl<T: Real> WeightSequence<T> {
    /// Custom sequence; every entry must be positive and finite.
    pub fn custom(beta: Vec<T>) -> Result<Self> {
        Self::with_regime(beta, Regime::Custom)
    }

    fn with_regime(beta: Vec<T>, regime: Regime<T>) -> Result<Self> {
        if beta.is_empty() {
            return Err(Error::WeightsTooShort { needed: 1, have: 0 });
        }
        if let Some(i) = beta.iter().position(|b| !(*b > T::zero()) || !b.is_finite()) {
            return Err(Error::NonPositiveWeight(i));
        }
        Ok(Self { beta, regime })
    }

    /// `β ≡ 1`.
    pub fn hardy(order: usize) -> Self {
        Self {
            beta: vec![T::one(); order + 1],
            regime: Regime::TypeA { alpha: -T::one() },
        }
    }

    /// `S²`: `β(0) = 1`, `β(n) = n`.
    pub fn dirichlet_s2(order: usize) -> Self {
        Self::power_law(T::one(), T::one(), order).expect("positive ell")
    }

    /// `A²_α` weights for any real `α`.
    pub fn a2alpha(alpha: T, order: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::Precondition("a2alpha weights need M >= 1".into()));
        }
        let regime = Regime::for_alpha(alpha);
        let s = alpha + T::lit(2.0);
        let mut beta = vec![T::one(); order + 1];
        match regime {
            Regime::TypeA { .. } | Regime::TypeB { .. } => {
                let n = regime.low_order().unwrap_or(0);
                let start = if regime.low_order().is_some() { n + 1 } else { 0 };
                let (lg_s, sign_s) = ln_gamma_signed(s)?;
                let expected_sign = if n.is_multiple_of(2) { T::one() } else { -T::one() };
                if sign_s != expected_sign {
                    return Err(Error::Internal(format!("sign of Gamma({s}) inconsistent with N = {n}")));
                }
                for (m, b) in beta.iter_mut().enumerate().skip(start) {
                    let mf = T::lit(m as f64);
                    *b = ((ln_gamma_ratio(mf + T::one(), mf + s)? + lg_s) / T::lit(2.0)).exp();
                }
            }
            Regime::TypeC { n, .. } => {
                if order <= n {
                    return Err(Error::Precondition(format!("type C weights need M > N = {n}")));
                }
                let a = type_c_coefficients_exact(n, order)?;
                for (m, b) in beta.iter_mut().enumerate().skip(n + 1) {
                    let am = a[m]
                        .to_f64()
                        .ok_or_else(|| Error::Internal(format!("A_{m} not representable")))?;
                    *b = (T::one() / T::lit(am)).sqrt();
                }
            }
            _ => unreachable!("for_alpha yields an A²_α regime"),
        }
        Self::with_regime(beta, regime)
    }

    /// `β(0) = 1`, `β(n) = ℓ n^t`.
    pub fn power_law(t: T, ell: T, order: usize) -> Result<Self> {
        if !(ell > T::zero()) {
            return Err(Error::Precondition(format!(
                "power-law scale must be positive, got {ell}"
            )));
        }
        let beta = (0..=order)
            .map(|n| {
                if n == 0 {
                    T::one()
                } else {
                    ell * T::lit(n as f64).powf(t)
                }
            })
            .collect();
        Self::with_regime(beta, Regime::PowerLaw { t, ell })
    }

    pub fn beta(&self) -> &[T] {
        &self.beta
    }

    pub fn regime(&self) -> Regime<T> {
        self.regime
    }

    pub fn order(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn get(&self, n: usize) -> T {
        self.beta[n]
    }

    /// First `order + 1` entries, keeping the regime.
    pub fn truncated(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::WeightsTooShort {
                needed: order + 1,
                have: self.beta.len(),
            });
        }
        Ok(Self {
            beta: self.beta[..=order].to_vec(),
            regime: self.regime,
        })
    }

    /// Root-test proxy for `liminf β(n)^{1/n} = 1`: `β(n)^{1/n} ∈ [1/2, 2]`
    /// for every stored `n ≥ 16`.
    pub fn root_test_ok(&self) -> bool {
        self.beta.iter().enumerate().skip(16).all(|(n, b)| {
            let r = b.powf(T::one() / T::lit(n as f64));
            r >= T::lit(0.5) && r <= T::lit(2.0)
        })
    }
}

/// Coefficients `A_0..=A_M` of `(z − 1)^N log(1/(1 − z))`, exact rationals.
///
/// Fails if some `A_m` with `N < m ≤ M` is not strictly positive.
pub fn type_c_coefficients_exact(n: usize, order: usize) -> Result<Vec<BigRational>> {
    // (z - 1)^N = Σ_i C(N, i) (-1)^{N-i} z^i
    let mut binom = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    for i in 0..=n {
        let sign = if (n - i).is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        binom.push(&c * sign);
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = BigRational::zero();
        // log(1/(1 - z)) = Σ_{j >= 1} z^j / j
        for (i, b) in binom.iter().enumerate().take(k) {
            acc += BigRational::new(b.clone(), BigInt::from(k - i));
        }
        if k > n && !acc.is_positive() {
            return Err(Error::Internal(format!("A_{k} = {acc} is not positive for N = {n}")));
        }
        out.push(acc);
    }
    Ok(out)
}

/// [`type_c_coefficients_exact`] rounded to `T`.
pub fn type_c_coefficients<T: Real>(n: usize, order: usize) -> Result<Vec<T>> {
    type_c_coefficients_exact(n, order)?
        .iter()
        .map(|r| {
            r.to_f64()
                .map(T::lit)
                .ok_or_else(|| Error::Internal("A_k not representable".into()))
        })
        .collect()
}

/// `r(m) = β(m) · m^{(α+1)/2}` at `m = M/2` and `m = M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticDiagnostic<T> {
    pub half_estimate: T,
    pub constant_estimate: T,
    pub cauchy_residual: T,
}

pub fn asymptotic_check<T: Real>(w: &WeightSequence<T>, alpha: T) -> Result<AsymptoticDiagnostic<T>> {
    if w.beta.len() < 64 {
        return Err(Error::WeightsTooShort {
            needed: 64,
            have: w.beta.len(),
        });
    }
    let m = w.order();
    let e = (alpha + T::one()) / T::lit(2.0);
    let r = |k: usize| w.beta[k] * T::lit(k as f64).powf(e);
    let (half, full) = (r(m / 2), r(m));
    Ok(AsymptoticDiagnostic {
        half_estimate: half,
        constant_estimate: full,
        cauchy_residual: (full - half).abs(),
    })
}
