use crate::error::{Error, Result};
use crate::maps::LinearFractionalMap;
use crate::operators::{composition_matrix, multiplication_matrix, OperatorMatrix};
use crate::scalar::{cabs, Cplx, Real};
use crate::series::TruncatedSeries;
use crate::weights::{Regime, WeightSequence};

/// Which family of symbols to build.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode<T> {
    /// Weighted Bergman space `A²_α`: `γ_g = −α − 2`.
    Alpha(T),
    /// Power-law weights `β(n) ~ ℓ n^t`: `γ_g = 2t − 1`.
    Power(T),
}

impl<T: Real> Mode<T> {
    /// Exponent of `μ(z) = −b̄z + d̄` in `g`; `h` uses its negative.
    pub fn gamma_g(&self) -> T {
        match *self {
            Mode::Alpha(alpha) => -alpha - T::lit(2.0),
            Mode::Power(t) => T::lit(2.0) * t - T::one(),
        }
    }

    /// Does `weights` belong to the family this mode describes? Custom
    /// weights are accepted as-is.
    pub fn accepts(&self, weights: &WeightSequence<T>) -> bool {
        match (*self, weights.regime()) {
            (_, Regime::Custom) => true,
            (Mode::Power(t), Regime::PowerLaw { t: wt, .. }) => t == wt,
            (Mode::Alpha(alpha), r) => r.alpha() == Some(alpha),
            _ => false,
        }
    }
}

/// `σ`, `g` and `h` in `C_φ* = M_g C_σ M_h*`.
#[derive(Debug, Clone, PartialEq)]
pub struct CowenSymbols<T: Real> {
    pub sigma: LinearFractionalMap<T>,
    pub g: TruncatedSeries<T>,
    pub h: TruncatedSeries<T>,
    pub branch_factor: Cplx<T>,
    pub gamma_g: T,
    pub gamma_h: T,
}

/// Symbols for `φ` truncated at order `M`.
///
/// Powers use the principal branch. The mismatch between `μ^γ · η^γ` and
/// `(μη)^γ` is a constant, so it is removed by one unimodular factor fixed
/// at `z = w = 0`, where the identity reads `1 = c · d̄^γ · conj(d^{−γ})`.
pub fn cowen_symbols<T: Real>(phi: &LinearFractionalMap<T>, mode: Mode<T>, order: usize) -> Result<CowenSymbols<T>> {
    phi.require_self_map()?;
    let [_, b, c, d] = phi.coefficients();
    let gamma_g = mode.gamma_g();
    let gamma_h = -gamma_g;
    let mu = TruncatedSeries::linear(d.conj(), -b.conj(), order);
    let eta = TruncatedSeries::linear(d, c, order);
    let g_raw = mu.pow_real(gamma_g)?;
    let h = eta.pow_real(gamma_h)?;
    let branch_factor = Cplx::new(T::one(), T::zero()) / (g_raw.coeff(0) * h.coeff(0).conj());
    let drift = (cabs(branch_factor) - T::one()).abs();
    if drift > T::lit(1e3) * T::unit_roundoff() {
        return Err(Error::Internal(format!(
            "branch factor off the unit circle by {:e}",
            drift.to_f64()
        )));
    }
    Ok(CowenSymbols {
        sigma: phi.krein_adjoint(),
        g: g_raw.scale(branch_factor),
        h,
        branch_factor,
        gamma_g,
        gamma_h,
    })
}

/// `D = C_φ* − M_g C_σ M_h*` at order `M`.
///
/// `M_g` is lower and `M_h*` upper triangular, so the truncated product is
/// the exact compression of the infinite one.
pub fn cowen_difference<T: Real>(
    phi: &LinearFractionalMap<T>,
    weights: &WeightSequence<T>,
    mode: Mode<T>,
    order: usize,
) -> Result<OperatorMatrix<T>> {
    if !mode.accepts(weights) {
        return Err(Error::Precondition(format!(
            "{mode:?} does not match {:?} weights",
            weights.regime()
        )));
    }
    let w = weights.truncated(order)?;
    let s = cowen_symbols(phi, mode, order)?;
    let c_phi = composition_matrix(phi, &w, order)?;
    let c_sigma = composition_matrix(&s.sigma, &w, order)?;
    let m_g = multiplication_matrix(&s.g, &w, order)?;
    let m_h = multiplication_matrix(&s.h, &w, order)?;
    let rhs = m_g.product(&c_sigma)?.product(&m_h.adjoint())?;
    c_phi.adjoint().difference(&rhs)
}
