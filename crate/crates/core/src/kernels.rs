//! Reproducing kernels `K(z, w) = Σ (z w̄)^n / β(n)²` of `H²(β)`.
//!
//! Every kernel in scope depends on `z` and `w` only through `x = z w̄`, so
//! kernels are handled as power series in the single variable `x`.

use nalgebra::{Complex, ComplexField};

use crate::error::{Error, Result};
use crate::scalar::{cabs, creal, czero, Real};
use crate::series::TruncatedSeries;
use crate::weights::{Regime, WeightSequence};

/// `c_n = β(n)^{-2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCoefficients<T: Real> {
    c: Vec<T>,
}

impl<T: Real> KernelCoefficients<T> {
    pub fn from_weights(w: &WeightSequence<T>) -> Self {
        Self {
            c: w.beta().iter().map(|b| T::one() / (*b * *b)).collect(),
        }
    }

    pub fn coefficients(&self) -> &[T] {
        &self.c
    }

    /// Truncated `Σ c_n x^n`.
    pub fn evaluate(&self, x: Complex<T>) -> Complex<T> {
        self.c.iter().rev().fold(czero(), |acc, &c| acc * x + creal(c))
    }
}

fn check_disk<T: Real>(x: Complex<T>) -> Result<()> {
    let r = cabs(x);
    if r >= T::one() {
        return Err(Error::OutsideDisk(r.to_f64()));
    }
    Ok(())
}

/// Closed-form part of the `A²_α` kernel at `x = z w̄`, without the polynomial
/// `Q`:
///
/// * type A: `(1 − x)^{−(α+2)}`
/// * type B: `(−1)^N (1 − x)^{−(α+2)}`
/// * type C: `(x − 1)^N log(1/(1 − x))`
pub fn principal_part<T: Real>(alpha: T, x: Complex<T>) -> Result<Complex<T>> {
    check_disk(x)?;
    let s = alpha + T::lit(2.0);
    let one_minus = creal::<T>(T::one()) - x;
    Ok(match Regime::for_alpha(alpha) {
        Regime::TypeA { .. } => (one_minus.ln() * creal(-s)).exp(),
        Regime::TypeB { n, .. } => {
            let sign = if n % 2 == 0 { T::one() } else { -T::one() };
            (one_minus.ln() * creal(-s)).exp() * creal(sign)
        }
        Regime::TypeC { n, .. } => (-one_minus).powi(n as i32) * (-one_minus.ln()),
        _ => unreachable!(),
    })
}

/// Taylor coefficients (in `x`) of [`principal_part`] up to degree `order`.
///
/// Types A and B use the product form of the binomial series; type C goes
/// through the series logarithm. Neither touches the Gamma function, so the
/// result is independent of how the weights were computed.
pub fn principal_coefficients<T: Real>(alpha: T, order: usize) -> Result<Vec<T>> {
    let s = alpha + T::lit(2.0);
    match Regime::for_alpha(alpha) {
        Regime::TypeA { .. } | Regime::TypeB { .. } => {
            let sign = match Regime::for_alpha(alpha).low_order() {
                Some(n) if n % 2 == 1 => -T::one(),
                _ => T::one(),
            };
            let mut out = Vec::with_capacity(order + 1);
            let mut b = T::one();
            out.push(sign);
            for m in 1..=order {
                let mf = T::lit(m as f64);
                b = b * (mf - T::one() + s) / mf;
                out.push(sign * b);
            }
            Ok(out)
        }
        Regime::TypeC { n, .. } => {
            let one = creal(T::one());
            let log = TruncatedSeries::linear(one, -one, order).log_principal()?.scale(-one);
            let poly = TruncatedSeries::linear(-one, one, order).power_int(n as u32);
            Ok(poly.multiply(&log)?.coeffs().iter().map(|z| z.re).collect())
        }
        _ => unreachable!(),
    }
}

/// Kernel coefficients minus the closed-form part, for `A²_α` at order `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelResidual<T> {
    pub alpha: T,
    pub coefficients: Vec<T>,
    /// Degrees `≤ free_degree` may carry the polynomial `Q` (and the
    /// low-order weight convention); `None` means no degree is free.
    pub free_degree: Option<usize>,
    /// Largest `|residual|` above `free_degree`.
    pub max_tail: T,
}

impl<T: Real> KernelResidual<T> {
    pub fn certify(&self, tol: T) -> bool {
        self.max_tail <= tol
    }
}

pub fn residual_coefficients<T: Real>(alpha: T, order: usize) -> Result<KernelResidual<T>> {
    let regime = Regime::for_alpha(alpha);
    if let Some(n) = regime.low_order() {
        if order <= n {
            return Err(Error::Precondition(format!("kernel residual needs M > N = {n}")));
        }
    }
    let w = WeightSequence::a2alpha(alpha, order)?;
    let kernel = KernelCoefficients::from_weights(&w);
    let principal = principal_coefficients(alpha, order)?;
    let coefficients: Vec<T> = kernel.c.iter().zip(&principal).map(|(k, p)| *k - *p).collect();
    let free_degree = regime.low_order();
    let skip = free_degree.map_or(0, |n| n + 1);
    let max_tail = coefficients
        .iter()
        .skip(skip)
        .map(|r| r.abs())
        .fold(T::zero(), |m, x| if x > m { x } else { m });
    Ok(KernelResidual {
        alpha,
        coefficients,
        free_degree,
        max_tail,
    })
}

/// `|⟨f, K_p⟩ − f(p)|`, with the inner product taken in `H²(β)`.
pub fn reproducing_check<T: Real>(w: &WeightSequence<T>, f: &TruncatedSeries<T>, p: Complex<T>) -> Result<T> {
    check_disk(p)?;
    if f.order() > w.order() {
        return Err(Error::WeightsTooShort {
            needed: f.order() + 1,
            have: w.order() + 1,
        });
    }
    let kernel = KernelCoefficients::from_weights(w);
    let pc = p.conj();
    let mut inner = czero::<T>();
    let mut pow = creal(T::one());
    for (n, fnn) in f.coeffs().iter().enumerate() {
        // K_p = Σ c_n p̄^n z^n;  ⟨f, K_p⟩ = Σ f_n · conj(c_n p̄^n) · β(n)²
        let beta = w.get(n);
        let kn = pow * creal(kernel.c[n]);
        inner += *fnn * kn.conj() * creal(beta * beta);
        pow *= pc;
    }
    Ok(cabs(inner - f.eval(p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn kernel_coefficient_examples() {
        let h = KernelCoefficients::from_weights(&WeightSequence::<f64>::hardy(6));
        assert_eq!(h.coefficients(), &[1.0; 7]);
        let x = c(0.5, 0.0);
        assert!((h.evaluate(x) - c(2.0 - 0.5f64.powi(6), 0.0)).modulus() < 1e-15);

        let b = KernelCoefficients::from_weights(&WeightSequence::a2alpha(0.0_f64, 6).unwrap());
        for (n, cn) in b.coefficients().iter().enumerate() {
            assert!((cn - (n + 1) as f64).abs() < 1e-13);
        }

        let s2 = KernelCoefficients::from_weights(&WeightSequence::<f64>::dirichlet_s2(6));
        assert_eq!(s2.coefficients()[0], 1.0);
        for n in 1..=6 {
            assert_eq!(s2.coefficients()[n], 1.0 / (n * n) as f64);
        }
    }

    #[test]
    fn principal_part_examples() {
        assert_eq!(principal_part(-1.0, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert!((principal_part(-1.0, c(0.5, 0.0)).unwrap() - c(2.0, 0.0)).modulus() < 1e-15);
        let log2 = principal_part(-2.0, c(0.5, 0.0)).unwrap();
        assert!((log2 - c(std::f64::consts::LN_2, 0.0)).modulus() < 1e-15);
        assert!(matches!(principal_part(-1.0, c(1.0, 0.0)), Err(Error::OutsideDisk(_))));
    }

    #[test]
    fn principal_coefficients_sum_to_closed_form() {
        for alpha in [0.0, -1.0, -1.7, -2.0, -2.5, -3.0, -3.5, -4.0] {
            let coeffs = principal_coefficients(alpha, 200).unwrap();
            let x = 0.3_f64;
            let series: f64 = coeffs.iter().enumerate().map(|(k, a)| a * x.powi(k as i32)).sum();
            let closed = principal_part(alpha, c(x, 0.0)).unwrap();
            assert!((series - closed.re).abs() < 1e-13, "alpha={alpha}");
        }
    }

    #[test]
    fn residual_examples() {
        let r = residual_coefficients(0.0_f64, 64).unwrap();
        assert_eq!(r.free_degree, None);
        assert!(r.max_tail < 1e-11);

        let r = residual_coefficients(-3.5_f64, 64).unwrap();
        assert_eq!(r.free_degree, Some(2));
        assert!(r.max_tail < 1e-10);

        let r = residual_coefficients(-2.0_f64, 64).unwrap();
        assert_eq!(r.free_degree, Some(0));
        assert!(r.max_tail < 1e-14);
        assert_eq!(r.coefficients[0], 1.0);
    }

    #[test]
    fn reproducing_examples() {
        let hardy = WeightSequence::<f64>::hardy(4);
        let f = TruncatedSeries::from_slice(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], 4);
        assert!(reproducing_check(&hardy, &f, c(0.3, 0.0)).unwrap() < 1e-16);
        assert!((f.eval(c(0.3, 0.0)) - c(0.09, 0.0)).modulus() < 1e-16);

        let w = WeightSequence::a2alpha(-2.5, 4).unwrap();
        assert_eq!(
            reproducing_check(&w, &TruncatedSeries::one(4), c(0.0, 0.0)).unwrap(),
            0.0
        );

        let s2 = WeightSequence::<f64>::dirichlet_s2(10);
        let g: Vec<_> = (0..=10)
            .map(|k| c((k as f64 * 0.7).sin(), (k as f64 * 1.3).cos()))
            .collect();
        let g = TruncatedSeries::new(g);
        assert!(reproducing_check(&s2, &g, c(0.5, 0.0)).unwrap() <= 1e-12);

        assert!(matches!(
            reproducing_check(&s2, &g, c(0.0, 1.0)),
            Err(Error::OutsideDisk(_))
        ));
    }
}
