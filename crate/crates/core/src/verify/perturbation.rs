use crate::error::{Error, Result};
use crate::maps::LinearFractionalMap;
use crate::operators::{composition_matrix, multiplication_matrix, OperatorMatrix};
use crate::scalar::{cabs, Real};
use crate::series::TruncatedSeries;
use crate::weights::{Regime, WeightSequence};

use super::report::{map_param, to_f64s, Param, VerificationReport};
use super::{converged, CAUCHY_GATE, DECAY_RATIO};

/// An operator defined independently of the weights, so that it can be
/// represented in two different spaces.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorRecipe<T: Real> {
    Composition(LinearFractionalMap<T>),
    Multiplication(TruncatedSeries<T>),
}

impl<T: Real> OperatorRecipe<T> {
    pub fn build(&self, weights: &WeightSequence<T>, order: usize) -> Result<OperatorMatrix<T>> {
        match self {
            OperatorRecipe::Composition(phi) => composition_matrix(phi, weights, order),
            OperatorRecipe::Multiplication(u) => {
                if u.order() < order {
                    return Err(Error::OrderMismatch {
                        left: u.order(),
                        right: order,
                    });
                }
                multiplication_matrix(&u.retruncate(order), weights, order)
            }
        }
    }

    fn describe(&self) -> Param {
        match self {
            OperatorRecipe::Composition(phi) => map_param(phi),
            OperatorRecipe::Multiplication(_) => Param::Text("multiplier".into()),
        }
    }
}

/// `ρ = lim β₂(n)/β₁(n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRatio<T> {
    /// The value used to build `K`.
    pub limit: T,
    /// `β₂(M)/β₁(M)`.
    pub estimate: T,
    /// `β₂(M/2)/β₁(M/2)`.
    pub half_estimate: T,
    /// `|ρ(M) − ρ(M/2)| / ρ(M)`.
    pub cauchy: T,
    /// Whether `limit` comes from the closed-form asymptotics of both
    /// sequences rather than from `estimate`.
    pub closed_form: bool,
}

/// Estimates `lim β₂/β₁` at `n = M`, gated by a relative Cauchy test
/// against `n = M/2`. When both sequences have known asymptotics
/// `β(n) ~ c n^e` with the same `e`, the exact limit `c₂/c₁` is used.
pub fn limit_ratio<T: Real>(b1: &WeightSequence<T>, b2: &WeightSequence<T>, order: usize) -> Result<LimitRatio<T>> {
    let have = b1.order().min(b2.order());
    if have < order {
        return Err(Error::WeightsTooShort {
            needed: order + 1,
            have: have + 1,
        });
    }
    if order < 2 {
        return Err(Error::Precondition("limit estimate needs M >= 2".into()));
    }
    let at = |n: usize| b2.get(n) / b1.get(n);
    let (estimate, half_estimate) = (at(order), at(order / 2));
    let cauchy = (estimate - half_estimate).abs() / estimate;
    let gate = T::lit(CAUCHY_GATE);
    if cauchy > gate {
        return Err(Error::WeightsNotEquivalent(format!(
            "ratio still moving: relative change {cauchy} between M/2 and M"
        )));
    }
    let (r1, r2) = (b1.regime(), b2.regime());
    let closed = match (
        r1.growth_exponent(),
        r2.growth_exponent(),
        r1.asymptotic_constant(),
        r2.asymptotic_constant(),
    ) {
        (Some(e1), Some(e2), Some(c1), Some(c2)) => {
            if (e1 - e2).abs() > T::lit(1e-12) {
                return Err(Error::WeightsNotEquivalent(format!(
                    "growth exponents differ: {e1} vs {e2}"
                )));
            }
            Some(c2 / c1)
        }
        _ => None,
    };
    let limit = closed.unwrap_or(estimate);
    if (limit - estimate).abs() / limit > gate {
        return Err(Error::WeightsNotEquivalent(format!(
            "estimate {estimate} far from limit {limit}"
        )));
    }
    Ok(LimitRatio {
        limit,
        estimate,
        half_estimate,
        cauchy,
        closed_form: closed.is_some(),
    })
}

/// `K_n = ρ² β₁(n)² / β₂(n)² − 1` for `n ≤ M`.
pub fn perturbation_diagonal<T: Real>(
    b1: &WeightSequence<T>,
    b2: &WeightSequence<T>,
    rho: T,
    order: usize,
) -> Result<Vec<T>> {
    let have = b1.order().min(b2.order());
    if have < order {
        return Err(Error::WeightsTooShort {
            needed: order + 1,
            have: have + 1,
        });
    }
    Ok((0..=order)
        .map(|n| {
            let q = rho * b1.get(n) / b2.get(n);
            q * q - T::one()
        })
        .collect())
}

fn band_max<T: Real>(v: &[T]) -> T {
    v.iter()
        .map(|x| x.abs())
        .fold(T::zero(), |a, x| if x > a { x } else { a })
}

fn regime_label<T: Real>(r: Regime<T>) -> String {
    match r {
        Regime::TypeA { alpha } | Regime::TypeB { alpha, .. } | Regime::TypeC { alpha, .. } => {
            format!("a2alpha({alpha})")
        }
        Regime::PowerLaw { t, ell } => format!("power_law({t},{ell})"),
        Regime::Custom => "custom".into(),
    }
}

/// Adjoints of one operator in two equivalent spaces, related by the
/// diagonal `K`: `B₂(I + K) = (I + K)B₁` on the leading `k`-block, with
/// `B₁` rewritten in the `β₂` basis, and `K_n → 0`.
///
/// Both weight sequences need `2M + 1` entries.
pub fn run_perturbation<T: Real>(
    b1: &WeightSequence<T>,
    b2: &WeightSequence<T>,
    recipe: &OperatorRecipe<T>,
    order: usize,
    k: usize,
    tol: T,
) -> Result<VerificationReport> {
    if k > order {
        return Err(Error::BlockOutOfRange { k, order });
    }
    let rho = limit_ratio(b1, b2, order)?;
    let residual = |m: usize| -> Result<f64> {
        let (w1, w2) = (b1.truncated(m)?, b2.truncated(m)?);
        let adj1 = recipe.build(&w1, m)?.adjoint().change_basis(&w2)?;
        let adj2 = recipe.build(&w2, m)?.adjoint();
        let kd = perturbation_diagonal(&w1, &w2, rho.limit, m)?;
        let mut worst = T::zero();
        for j in 0..=k {
            for i in 0..=k {
                let lhs = adj2.get(i, j) * (T::one() + kd[j]);
                let rhs = adj1.get(i, j) * (T::one() + kd[i]);
                let r = cabs(lhs - rhs);
                if r > worst {
                    worst = r;
                }
            }
        }
        Ok(worst.to_f64())
    };
    let (r1, r2) = (residual(order)?, residual(2 * order)?);
    let kd = perturbation_diagonal(b1, b2, rho.limit, order)?;
    let head = band_max(&kd[..=order / 4]).to_f64();
    let tail = band_max(&kd[3 * order / 4..]).to_f64();

    let mut report = VerificationReport::new("perturbation", order)
        .param("block", k)
        .param("decay_ratio", DECAY_RATIO)
        .param("operator", recipe.describe())
        .param("tol", tol.to_f64())
        .param("weights_1", regime_label(b1.regime()))
        .param("weights_2", regime_label(b2.regime()));
    report.residual("rho_limit", rho.limit.to_f64());
    report.residual("rho_estimate", rho.estimate.to_f64());
    report.residual("rho_cauchy", rho.cauchy.to_f64());
    report.residual("k_head_max", head);
    report.residual("k_tail_max", tail);
    if order >= 4 {
        report.residual("k_diag_4", kd[4].to_f64());
    }
    report.residual("identity_residual_M", r1);
    report.residual("identity_residual_2M", r2);
    report.decay = Some(to_f64s(&kd));
    let tol = tol.to_f64();
    report.pass = tail <= DECAY_RATIO * head && r1 <= tol && r2 <= tol && converged(r1, r2);
    Ok(report)
}
