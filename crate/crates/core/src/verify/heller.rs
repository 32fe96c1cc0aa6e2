use crate::error::{Error, Result};
use crate::maps::LinearFractionalMap;
use crate::operators::{composition_matrix, leading_block_of_product, multiplication_matrix};
use crate::scalar::{cabs, cone, Cplx, Real};
use crate::series::TruncatedSeries;
use crate::weights::WeightSequence;

use super::checks::{decay_gate, DecayProfile};
use super::report::{format_complex, map_param, VerificationReport};
use super::{DECAY_RATIO, SERIES_IDENTITY_TOL};

/// Products whose first factor is upper triangular are built at a guard
/// order of `2m`, and only their leading `m`-block is kept.
const GUARD: usize = 2;

fn check_order(order: usize) -> Result<()> {
    if order < 16 {
        return Err(Error::Precondition(format!(
            "truncation order must be at least 16, got {order}"
        )));
    }
    Ok(())
}

/// `C_φ* = M_G* C_σ` modulo compacts for `φ(0) = 0`, with
/// `G(z) = (1 − (c/a) z)^{2t−1}`, on `β(n) = n^t`.
///
/// Also checks the series identity `h₁ = G ∘ φ`, where
/// `h₁(z) = (d / (cz + d))^{2t−1}`.
pub fn run_heller_a<T: Real>(phi: &LinearFractionalMap<T>, t: T, order: usize) -> Result<VerificationReport> {
    check_order(order)?;
    let [a, b, c, d] = phi.coefficients();
    let scale = cabs(a) + cabs(b) + cabs(c) + cabs(d);
    if cabs(b) > T::lit(8.0) * T::unit_roundoff() * scale {
        return Err(Error::Precondition("Heller-A requires φ(0)=0".into()));
    }
    phi.require_self_map()?;
    let e = T::lit(2.0) * t - T::one();
    let ratio = c / a;
    let sigma = phi.krein_adjoint();
    let w = WeightSequence::power_law(t, T::one(), GUARD * 2 * order)?;

    let profile = |m: usize| -> Result<DecayProfile<T>> {
        let n = GUARD * m;
        let wg = w.truncated(n)?;
        let g = TruncatedSeries::linear(cone(), -ratio, n).pow_real(e)?;
        let c_phi = composition_matrix(phi, &wg, n)?;
        let c_sigma = composition_matrix(&sigma, &wg, n)?;
        let m_g = multiplication_matrix(&g, &wg, n)?;
        let rhs = leading_block_of_product(&[&m_g.adjoint(), &c_sigma], m)?;
        Ok(DecayProfile::of(&c_phi.adjoint().leading_block(m)?.difference(&rhs)?))
    };

    let g = TruncatedSeries::linear(cone(), -ratio, order).pow_real(e)?;
    let h1 = TruncatedSeries::linear(cone(), c / d, order).pow_real(-e)?;
    let g_of_phi = g.compose(&TruncatedSeries::from_lfm(phi, order)?)?.series;
    let h1_residual = h1.max_abs_diff(&g_of_phi)?.to_f64();

    let mut report = VerificationReport::new("heller_a", order)
        .param("decay_ratio", DECAY_RATIO)
        .param("map", map_param(phi))
        .param("series_tol", SERIES_IDENTITY_TOL)
        .param("t", t.to_f64());
    report.residual("h1_minus_g_of_phi", h1_residual);
    let decays = decay_gate(&mut report, &profile(order)?, &profile(2 * order)?);
    report.pass = decays && h1_residual <= SERIES_IDENTITY_TOL;
    Ok(report)
}

/// `C_φ* = M_G* C_{φ⁻¹} M_{1/H}` modulo compacts for the automorphism
/// `φ(z) = λ(z + u)/(ūz + 1)`, with `G(z) = (1 − λ̄ūz)^{2t−1}` and
/// `H(z) = (1 + ūz)^{2t−1}`, on `β(n) = n^t`.
///
/// Also checks that the Kreĭn adjoint of `φ` is `φ⁻¹` up to scaling.
pub fn run_heller_b<T: Real>(lambda: Cplx<T>, u: Cplx<T>, t: T, order: usize) -> Result<VerificationReport> {
    check_order(order)?;
    if (cabs(lambda) - T::one()).abs() > T::lit(1e-12) {
        return Err(Error::Precondition(format!(
            "Heller-B requires |λ| = 1, got {}",
            cabs(lambda)
        )));
    }
    if !(cabs(u) < T::one()) {
        return Err(Error::Precondition(format!(
            "Heller-B requires |u| < 1, got {}",
            cabs(u)
        )));
    }
    let phi = LinearFractionalMap::automorphism(lambda, u)?;
    let inverse = phi.inverse();
    let sigma_distance = phi.krein_adjoint().projective_distance(&inverse).to_f64();
    let e = T::lit(2.0) * t - T::one();
    let g_lin = -(lambda * u).conj();
    let w = WeightSequence::power_law(t, T::one(), GUARD * 2 * order)?;

    let profile = |m: usize| -> Result<DecayProfile<T>> {
        let n = GUARD * m;
        let wg = w.truncated(n)?;
        let g = TruncatedSeries::linear(cone(), g_lin, n).pow_real(e)?;
        let inv_h = TruncatedSeries::linear(cone(), u.conj(), n).pow_real(-e)?;
        let c_phi = composition_matrix(&phi, &wg, n)?;
        let c_inv = composition_matrix(&inverse, &wg, n)?;
        let m_g = multiplication_matrix(&g, &wg, n)?;
        let m_inv_h = multiplication_matrix(&inv_h, &wg, n)?;
        let rhs = leading_block_of_product(&[&m_g.adjoint(), &c_inv, &m_inv_h], m)?;
        Ok(DecayProfile::of(&c_phi.adjoint().leading_block(m)?.difference(&rhs)?))
    };

    let mut report = VerificationReport::new("heller_b", order)
        .param("decay_ratio", DECAY_RATIO)
        .param("lambda", format_complex(lambda.re.to_f64(), lambda.im.to_f64()))
        .param("t", t.to_f64())
        .param("u", format_complex(u.re.to_f64(), u.im.to_f64()));
    report.residual("sigma_inverse_distance", sigma_distance);
    let decays = decay_gate(&mut report, &profile(order)?, &profile(2 * order)?);
    report.pass = decays && sigma_distance <= 1e3 * T::unit_roundoff().to_f64();
    Ok(report)
}
