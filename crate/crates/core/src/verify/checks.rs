use crate::error::{Error, Result};
use crate::kernels::residual_coefficients;
use crate::maps::LinearFractionalMap;
use crate::operators::{numerical_rank, OperatorMatrix};
use crate::scalar::Real;
use crate::weights::{asymptotic_check, Regime, WeightSequence};

use super::report::{map_param, to_f64s, VerificationReport};
use super::symbols::{cowen_difference, Mode};
use super::{converged, ASYMPTOTIC_CONSTANT_TOL, ASYMPTOTIC_GATE, DECAY_RATIO};

/// Upper bound on the rank of `C_φ* − M_g C_σ M_h*` on `A²_α`.
///
/// Zero when `α + 2 > 0`. Otherwise the difference kernel splits into
/// bilinear polynomial blocks of degree `≤ N`: two of them in type B, four
/// in type C where the logarithmic terms add two more.
pub fn rank_bound<T: Real>(alpha: T) -> usize {
    match Regime::for_alpha(alpha) {
        Regime::TypeB { n, .. } => 2 * (n + 1),
        Regime::TypeC { n, .. } => 4 * (n + 1),
        _ => 0,
    }
}

/// Band maxima of `p_n = ‖D e_n‖` over `[M/16, M/8]` (head) and
/// `[3M/4, M]` (tail).
#[derive(Debug, Clone, PartialEq)]
pub struct DecayProfile<T> {
    pub norms: Vec<T>,
    pub head: T,
    pub tail: T,
}

impl<T: Real> DecayProfile<T> {
    pub fn from_norms(norms: Vec<T>) -> Self {
        let m = norms.len() - 1;
        let band = |lo: usize, hi: usize| {
            norms[lo..=hi]
                .iter()
                .copied()
                .fold(T::zero(), |a, x| if x > a { x } else { a })
        };
        let head = band(m / 16, m / 8);
        let tail = band(3 * m / 4, m);
        Self { norms, head, tail }
    }

    pub fn of(d: &OperatorMatrix<T>) -> Self {
        Self::from_norms(d.basis_image_norms())
    }

    /// `tail / head`; zero for an identically zero profile.
    pub fn ratio(&self) -> f64 {
        let (head, tail) = (self.head.to_f64(), self.tail.to_f64());
        if tail == 0.0 {
            0.0
        } else if head == 0.0 {
            f64::INFINITY
        } else {
            tail / head
        }
    }
}

/// The compactness gate: the tail band sits below half the head band at
/// both `M` and `2M`, and the tail does not grow when `M` doubles.
pub(crate) fn decay_gate<T: Real>(
    report: &mut VerificationReport,
    at_m: &DecayProfile<T>,
    at_2m: &DecayProfile<T>,
) -> bool {
    let (r1, r2) = (at_m.ratio(), at_2m.ratio());
    report.residual("decay_ratio_M", r1);
    report.residual("decay_ratio_2M", r2);
    report.residual("tail_max_M", at_m.tail.to_f64());
    report.residual("tail_max_2M", at_2m.tail.to_f64());
    report.decay = Some(to_f64s(&at_m.norms));
    r1 <= DECAY_RATIO && r2 <= DECAY_RATIO && converged(at_m.tail.to_f64(), at_2m.tail.to_f64())
}

fn require_order(order: usize) -> Result<()> {
    if order < 16 {
        return Err(Error::Precondition(format!(
            "truncation order must be at least 16, got {order}"
        )));
    }
    Ok(())
}

/// `C_φ* = M_g C_σ M_h*` on `A²_α`, `α + 2 > 0`, checked on the leading
/// `k`-block at orders `M` and `2M`.
pub fn run_exact_identity<T: Real>(
    phi: &LinearFractionalMap<T>,
    alpha: T,
    order: usize,
    k: usize,
    tol: T,
) -> Result<VerificationReport> {
    if !(alpha + T::lit(2.0) > T::zero()) {
        return Err(Error::Precondition(format!(
            "exact identity needs alpha + 2 > 0, got alpha = {alpha}"
        )));
    }
    if k > order {
        return Err(Error::BlockOutOfRange { k, order });
    }
    let w = WeightSequence::a2alpha(alpha, 2 * order)?;
    let residual = |m: usize| -> Result<f64> {
        Ok(cowen_difference(phi, &w, Mode::Alpha(alpha), m)?
            .leading_block(k)?
            .max_abs_entry()
            .to_f64())
    };
    let (r1, r2) = (residual(order)?, residual(2 * order)?);
    let mut report = VerificationReport::new("exact_identity", order)
        .param("alpha", alpha.to_f64())
        .param("block", k)
        .param("map", map_param(phi))
        .param("tol", tol.to_f64());
    report.residual("max_entry_M", r1);
    report.residual("max_entry_2M", r2);
    let tol = tol.to_f64();
    report.pass = r1 <= tol && r2 <= tol && converged(r1, r2);
    Ok(report)
}

/// Rank of the leading `M/2`-block of the difference on `A²_α`,
/// `α + 2 ≤ 0`, at orders `M` and `2M`.
pub fn run_finite_rank<T: Real>(
    phi: &LinearFractionalMap<T>,
    alpha: T,
    order: usize,
    rel_tol: T,
) -> Result<VerificationReport> {
    if alpha + T::lit(2.0) > T::zero() {
        return Err(Error::Precondition(format!(
            "finite rank check needs alpha + 2 <= 0, got alpha = {alpha}"
        )));
    }
    require_order(order)?;
    let bound = rank_bound(alpha);
    let w = WeightSequence::a2alpha(alpha, 2 * order)?;
    let spectrum = |m: usize| -> Result<Vec<T>> {
        Ok(cowen_difference(phi, &w, Mode::Alpha(alpha), m)?
            .leading_block(m / 2)?
            .singular_values())
    };
    let (s1, s2) = (spectrum(order)?, spectrum(2 * order)?);
    let (k1, k2) = (numerical_rank(&s1, rel_tol), numerical_rank(&s2, rel_tol));
    let gap = |s: &[T]| -> f64 {
        match (s.first(), s.get(bound)) {
            (Some(&top), Some(&next)) if top > T::zero() => (next / top).to_f64(),
            _ => 0.0,
        }
    };
    let mut report = VerificationReport::new("finite_rank", order)
        .param("alpha", alpha.to_f64())
        .param("block", order / 2)
        .param("map", map_param(phi))
        .param("rank_bound", bound)
        .param("rel_tol", rel_tol.to_f64());
    report.residual("rank_M", k1 as f64);
    report.residual("rank_2M", k2 as f64);
    report.residual("sigma_ratio_after_bound_M", gap(&s1));
    report.residual("sigma_ratio_after_bound_2M", gap(&s2));
    report.singular_values = Some(to_f64s(&s1));
    report.pass = k1 <= bound && k2 <= bound && k1 == k2;
    Ok(report)
}

/// Compactness of the difference on power-law weights `β(n) = ℓ n^t`.
pub fn run_compact_decay<T: Real>(
    phi: &LinearFractionalMap<T>,
    t: T,
    ell: T,
    order: usize,
) -> Result<VerificationReport> {
    let w = WeightSequence::power_law(t, ell, 2 * order)?;
    let report = run_compact_decay_with(phi, &w, Mode::Power(t), order)?;
    Ok(report.param("ell", ell.to_f64()).param("t", t.to_f64()))
}

/// Compactness of the difference for arbitrary weights with at least
/// `2M + 1` entries.
pub fn run_compact_decay_with<T: Real>(
    phi: &LinearFractionalMap<T>,
    weights: &WeightSequence<T>,
    mode: Mode<T>,
    order: usize,
) -> Result<VerificationReport> {
    require_order(order)?;
    let p1 = DecayProfile::of(&cowen_difference(phi, weights, mode, order)?);
    let p2 = DecayProfile::of(&cowen_difference(phi, weights, mode, 2 * order)?);
    let mut report = VerificationReport::new("compact_decay", order)
        .param("decay_ratio", DECAY_RATIO)
        .param("map", map_param(phi));
    report.pass = decay_gate(&mut report, &p1, &p2);
    Ok(report)
}

/// With `α = −2t − 1`, the `A²_α` difference (rewritten in the power-law
/// basis) and the power-law difference agree modulo compacts.
pub fn run_mode_consistency<T: Real>(phi: &LinearFractionalMap<T>, t: T, order: usize) -> Result<VerificationReport> {
    require_order(order)?;
    let alpha = -T::lit(2.0) * t - T::one();
    let wa = WeightSequence::a2alpha(alpha, 2 * order)?;
    let wp = WeightSequence::power_law(t, T::one(), 2 * order)?;
    let profile = |m: usize| -> Result<DecayProfile<T>> {
        let da = cowen_difference(phi, &wa, Mode::Alpha(alpha), m)?.change_basis(&wp)?;
        let dp = cowen_difference(phi, &wp, Mode::Power(t), m)?;
        Ok(DecayProfile::of(&da.difference(&dp)?))
    };
    let (p1, p2) = (profile(order)?, profile(2 * order)?);
    let mut report = VerificationReport::new("mode_consistency", order)
        .param("alpha", alpha.to_f64())
        .param("decay_ratio", DECAY_RATIO)
        .param("map", map_param(phi))
        .param("t", t.to_f64());
    report.pass = decay_gate(&mut report, &p1, &p2);
    Ok(report)
}

/// Kernel residual beyond degree `N` at orders `M` and `2M`.
pub fn kernel_report<T: Real>(alpha: T, order: usize, tol: T) -> Result<VerificationReport> {
    let r1 = residual_coefficients(alpha, order)?;
    let r2 = residual_coefficients(alpha, 2 * order)?;
    let mut report = VerificationReport::new("kernel_residual", order)
        .param("alpha", alpha.to_f64())
        .param("tol", tol.to_f64());
    if let Some(n) = r1.free_degree {
        report = report.param("free_degree", n);
    }
    report.residual("max_tail_M", r1.max_tail.to_f64());
    report.residual("max_tail_2M", r2.max_tail.to_f64());
    report.pass = r1.certify(tol) && r2.certify(tol);
    Ok(report)
}

/// `β(m) · m^{(α+1)/2}` settles: Cauchy residual between `M/2` and `M`,
/// and distance to the closed-form constant.
pub fn asymptotics_report<T: Real>(alpha: T, order: usize) -> Result<VerificationReport> {
    let w = WeightSequence::a2alpha(alpha, order)?;
    let diag = asymptotic_check(&w, alpha)?;
    let limit = w
        .regime()
        .asymptotic_constant()
        .ok_or_else(|| Error::Internal("no closed-form constant".into()))?;
    let mut report = VerificationReport::new("weight_asymptotics", order)
        .param("alpha", alpha.to_f64())
        .param("cauchy_tol", ASYMPTOTIC_GATE)
        .param("constant_tol", ASYMPTOTIC_CONSTANT_TOL);
    report.truncations = [order / 2, order];
    let cauchy = diag.cauchy_residual.to_f64();
    let off = (diag.constant_estimate - limit).abs().to_f64();
    report.residual("cauchy_residual", cauchy);
    report.residual("constant_estimate", diag.constant_estimate.to_f64());
    report.residual("constant_limit", limit.to_f64());
    report.residual("constant_error", off);
    report.pass = cauchy <= ASYMPTOTIC_GATE && off <= ASYMPTOTIC_CONSTANT_TOL;
    Ok(report)
}
