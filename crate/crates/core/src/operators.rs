//! Finite sections of operators on `H²(β)`.
//!
//! Matrices are expressed in the orthonormal basis `e_n = z^n / β(n)`, so
//! `entry[m][n] = ⟨T e_n, e_m⟩` and Hilbert-space adjoints are conjugate
//! transposes.

use std::sync::Arc;

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::maps::LinearFractionalMap;
use crate::scalar::{cabs, creal, czero, Real};
use crate::series::TruncatedSeries;
use crate::weights::WeightSequence;

/// Compression of an operator to `span{e_0, …, e_M}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<T: Real> {
    entries: DMatrix<Complex<T>>,
    weights: Arc<WeightSequence<T>>,
    label: String,
}

impl<T: Real> OperatorMatrix<T> {
    /// Wraps a square matrix; its size must be `weights.order() + 1`.
    pub fn from_entries(
        entries: DMatrix<Complex<T>>,
        weights: &WeightSequence<T>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let n = weights.order() + 1;
        if entries.nrows() != n || entries.ncols() != n {
            return Err(Error::SizeMismatch {
                left: entries.nrows().max(entries.ncols()),
                right: n,
            });
        }
        Ok(Self {
            entries,
            weights: Arc::new(weights.clone()),
            label: label.into(),
        })
    }

    pub fn identity(weights: &WeightSequence<T>) -> Self {
        let n = weights.order() + 1;
        Self {
            entries: DMatrix::identity(n, n),
            weights: Arc::new(weights.clone()),
            label: "I".into(),
        }
    }

    pub fn diagonal(values: &[Complex<T>], weights: &WeightSequence<T>, label: impl Into<String>) -> Result<Self> {
        let n = weights.order() + 1;
        if values.len() != n {
            return Err(Error::SizeMismatch {
                left: values.len(),
                right: n,
            });
        }
        let entries = DMatrix::from_fn(n, n, |i, j| if i == j { values[i] } else { czero() });
        Ok(Self {
            entries,
            weights: Arc::new(weights.clone()),
            label: label.into(),
        })
    }

    pub fn entries(&self) -> &DMatrix<Complex<T>> {
        &self.entries
    }

    pub fn weights(&self) -> &WeightSequence<T> {
        &self.weights
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Truncation order `M` (the matrix is `(M+1) × (M+1)`).
    pub fn order(&self) -> usize {
        self.entries.nrows() - 1
    }

    pub fn get(&self, m: usize, n: usize) -> Complex<T> {
        self.entries[(m, n)]
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.entries.shape() != other.entries.shape() {
            return Err(Error::SizeMismatch {
                left: self.entries.nrows(),
                right: other.entries.nrows(),
            });
        }
        if !Arc::ptr_eq(&self.weights, &other.weights) && self.weights.beta() != other.weights.beta() {
            return Err(Error::WeightMismatch);
        }
        Ok(())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
            weights: self.weights.clone(),
            label: format!("({})*", self.label),
        }
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            entries: &self.entries * &other.entries,
            weights: self.weights.clone(),
            label: format!("{}·{}", self.label, other.label),
        })
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            entries: &self.entries - &other.entries,
            weights: self.weights.clone(),
            label: format!("{} − {}", self.label, other.label),
        })
    }

    /// Multiplies every entry by a scalar.
    pub fn scaled(&self, s: Complex<T>) -> Self {
        Self {
            entries: &self.entries * s,
            weights: self.weights.clone(),
            label: self.label.clone(),
        }
    }

    /// Top-left `(k+1) × (k+1)` block, with the weights cut to match.
    pub fn leading_block(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::BlockOutOfRange { k, order: self.order() });
        }
        Ok(Self {
            entries: self.entries.view((0, 0), (k + 1, k + 1)).into_owned(),
            weights: Arc::new(self.weights.truncated(k)?),
            label: self.label.clone(),
        })
    }

    /// The same operator written in the orthonormal basis of `target`.
    ///
    /// Coordinates transform by `S = diag(β_target / β_self)`, so the matrix
    /// becomes `S A S⁻¹`.
    pub fn change_basis(&self, target: &WeightSequence<T>) -> Result<Self> {
        let target = target.truncated(self.order())?;
        let src = self.weights.beta();
        let dst = target.beta();
        let n = self.order() + 1;
        let entries = DMatrix::from_fn(n, n, |i, j| {
            self.entries[(i, j)] * creal(dst[i] / src[i] * src[j] / dst[j])
        });
        Ok(Self {
            entries,
            weights: Arc::new(target),
            label: self.label.clone(),
        })
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<T> {
        let mut s: Vec<T> = self
            .entries
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .collect();
        s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        s
    }

    /// Number of singular values above `rel_tol · σ₁`; zero for the zero matrix.
    pub fn numerical_rank(&self, rel_tol: T) -> usize {
        numerical_rank(&self.singular_values(), rel_tol)
    }

    /// `‖A e_n‖` for every column `n`.
    pub fn basis_image_norms(&self) -> Vec<T> {
        self.entries
            .column_iter()
            .map(|c| c.iter().map(|z| z.norm_sqr()).fold(T::zero(), |s, q| s + q).sqrt())
            .collect()
    }

    pub fn max_abs_entry(&self) -> T {
        self.entries
            .iter()
            .map(|z| cabs(*z))
            .fold(T::zero(), |m, x| if x > m { x } else { m })
    }

    pub fn is_lower_triangular(&self) -> bool {
        let n = self.order() + 1;
        (0..n).all(|j| (0..j).all(|i| self.entries[(i, j)] == czero()))
    }
}

/// Count of `σ_k > rel_tol · σ₁` for a descending spectrum.
pub fn numerical_rank<T: Real>(singular_values: &[T], rel_tol: T) -> usize {
    match singular_values.first() {
        Some(&s1) if s1 > T::zero() => singular_values.iter().filter(|&&s| s > rel_tol * s1).count(),
        _ => 0,
    }
}

fn check_weights<T: Real>(w: &WeightSequence<T>, order: usize) -> Result<WeightSequence<T>> {
    w.truncated(order)
}

/// Matrix of `C_φ f = f ∘ φ`: `entry[m][n] = [z^m] φ^n · β(m)/β(n)`.
///
/// Columns are built recursively, `φ^n = φ^{n−1} · (az + b) / (cz + d)`, one
/// `O(M)` linear multiply and divide per column.
pub fn composition_matrix<T: Real>(
    phi: &LinearFractionalMap<T>,
    weights: &WeightSequence<T>,
    order: usize,
) -> Result<OperatorMatrix<T>> {
    phi.require_self_map()?;
    let w = check_weights(weights, order)?;
    let [a, b, c, d] = phi.coefficients();
    if d == czero() {
        return Err(Error::ZeroDenominator);
    }
    let beta = w.beta();
    let n = order + 1;
    let mut entries = DMatrix::from_element(n, n, czero());
    let mut power = TruncatedSeries::one(order);
    for col in 0..n {
        if col > 0 {
            power = power.mul_linear(b, a).div_linear(d, c)?;
        }
        for (row, coeff) in power.coeffs().iter().enumerate() {
            entries[(row, col)] = *coeff * creal(beta[row] / beta[col]);
        }
    }
    Ok(OperatorMatrix {
        entries,
        weights: Arc::new(w),
        label: "C_φ".into(),
    })
}

/// Matrix of `M_u f = u f`: `entry[m][n] = u_{m−n} · β(m)/β(n)` for `m ≥ n`.
pub fn multiplication_matrix<T: Real>(
    u: &TruncatedSeries<T>,
    weights: &WeightSequence<T>,
    order: usize,
) -> Result<OperatorMatrix<T>> {
    if u.order() < order {
        return Err(Error::OrderMismatch {
            left: u.order(),
            right: order,
        });
    }
    let w = check_weights(weights, order)?;
    let beta = w.beta();
    let coeffs = u.coeffs();
    let n = order + 1;
    let entries = DMatrix::from_fn(n, n, |m, k| {
        if m >= k {
            coeffs[m - k] * creal(beta[m] / beta[k])
        } else {
            czero()
        }
    });
    Ok(OperatorMatrix {
        entries,
        weights: Arc::new(w),
        label: "M_u".into(),
    })
}

/// Leading `(k+1) × (k+1)` block of the product `A_1 · A_2 ⋯ A_r`, computed
/// without forming the full product: the first factor is cut to its leading
/// rows and the last to its leading columns.
pub fn leading_block_of_product<T: Real>(factors: &[&OperatorMatrix<T>], k: usize) -> Result<OperatorMatrix<T>> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::Precondition("empty product".into()))?;
    for f in rest {
        first.check_compatible(f)?;
    }
    if k > first.order() {
        return Err(Error::BlockOutOfRange {
            k,
            order: first.order(),
        });
    }
    let n = first.order() + 1;
    let label = factors.iter().map(|f| f.label.as_str()).collect::<Vec<_>>().join("·");
    let entries = match rest.split_last() {
        None => first.entries.view((0, 0), (k + 1, k + 1)).into_owned(),
        Some((last, middle)) => {
            let mut acc = first.entries.view((0, 0), (k + 1, n)).into_owned();
            for m in middle {
                acc = &acc * &m.entries;
            }
            acc * last.entries.view((0, 0), (n, k + 1))
        }
    };
    Ok(OperatorMatrix {
        entries,
        weights: Arc::new(first.weights.truncated(k)?),
        label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type W = WeightSequence<f64>;
    type Map = LinearFractionalMap<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn example() -> Map {
        Map::real(1.0, 0.0, -1.0, 3.0).unwrap()
    }

    #[test]
    fn identity_composition_is_identity() {
        for w in [W::hardy(12), W::dirichlet_s2(12), W::a2alpha(-3.5, 12).unwrap()] {
            let cm = composition_matrix(&Map::identity(), &w, 12).unwrap();
            assert_eq!(cm.entries(), OperatorMatrix::identity(&w).entries());
        }
    }

    #[test]
    fn dilation_is_diagonal() {
        let half = Map::real(0.5, 0.0, 0.0, 1.0).unwrap();
        let cm = composition_matrix(&half, &W::hardy(10), 10).unwrap();
        for m in 0..=10 {
            for n in 0..=10 {
                let e = if m == n { 0.5f64.powi(n as i32) } else { 0.0 };
                assert_eq!(cm.get(m, n), c(e, 0.0));
            }
        }
    }

    #[test]
    fn example_first_column() {
        let cm = composition_matrix(&example(), &W::hardy(20), 20).unwrap();
        for m in 1..=20 {
            assert!((cm.get(m, 1) - c(3f64.powi(-(m as i32)), 0.0)).norm() < 1e-17);
        }
        assert!(cm.is_lower_triangular());
    }

    #[test]
    fn composition_rejects_non_self_maps() {
        let dilation = Map::real(2.0, 0.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            composition_matrix(&dilation, &W::hardy(4), 4),
            Err(Error::NotSelfMap(_))
        ));
    }

    #[test]
    fn multiplication_examples() {
        let w = W::dirichlet_s2(8);
        assert_eq!(
            multiplication_matrix(&TruncatedSeries::one(8), &w, 8)
                .unwrap()
                .entries(),
            OperatorMatrix::identity(&w).entries()
        );

        let shift = multiplication_matrix(&TruncatedSeries::variable(8), &W::hardy(8), 8).unwrap();
        for m in 0..=8 {
            for n in 0..=8 {
                assert_eq!(shift.get(m, n), if m == n + 1 { c(1.0, 0.0) } else { c(0.0, 0.0) });
            }
        }

        let s2_shift = multiplication_matrix(&TruncatedSeries::variable(8), &w, 8).unwrap();
        assert_eq!(s2_shift.get(1, 0), c(1.0, 0.0));
        for n in 1..8 {
            assert!((s2_shift.get(n + 1, n) - c((n + 1) as f64 / n as f64, 0.0)).norm() < 1e-15);
        }
        assert!(s2_shift.is_lower_triangular());

        assert!(matches!(
            multiplication_matrix(&TruncatedSeries::one(4), &w, 8),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn adjoint_examples() {
        let w = W::hardy(6);
        let shift = multiplication_matrix(&TruncatedSeries::variable(6), &w, 6).unwrap();
        let back = shift.adjoint();
        for m in 0..6 {
            assert_eq!(back.get(m, m + 1), c(1.0, 0.0));
        }
        assert_eq!(
            OperatorMatrix::identity(&w).adjoint().entries(),
            OperatorMatrix::identity(&w).entries()
        );
        let a = composition_matrix(&example(), &W::dirichlet_s2(6), 6).unwrap();
        let ad = a.adjoint();
        for m in 0..=6 {
            for n in 0..=6 {
                assert_eq!(a.get(m, n), ad.get(n, m).conj());
            }
        }
    }

    #[test]
    fn product_and_difference() {
        let w = W::dirichlet_s2(8);
        let a = composition_matrix(&example(), &w, 8).unwrap();
        let i = OperatorMatrix::identity(&w);
        assert_eq!(a.product(&i).unwrap().entries(), a.entries());
        assert_eq!(a.difference(&a).unwrap().max_abs_entry(), 0.0);

        let shift = multiplication_matrix(&TruncatedSeries::variable(8), &w, 8).unwrap();
        let double = shift.product(&shift).unwrap();
        let direct = multiplication_matrix(
            &TruncatedSeries::linear(c(0.0, 0.0), c(0.0, 0.0), 8)
                .add(&TruncatedSeries::variable(8).power_int(2))
                .unwrap(),
            &w,
            8,
        )
        .unwrap();
        for m in 0..=8 {
            for n in 0..=8 {
                assert!((double.get(m, n) - direct.get(m, n)).norm() < 1e-15);
            }
        }

        let other = OperatorMatrix::identity(&W::hardy(8));
        assert_eq!(a.product(&other).unwrap_err(), Error::WeightMismatch);
        assert!(matches!(
            a.difference(&OperatorMatrix::identity(&W::dirichlet_s2(4))),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn singular_value_examples() {
        let w = W::hardy(4);
        assert_eq!(OperatorMatrix::identity(&w).singular_values(), vec![1.0; 5]);

        let w3 = W::hardy(2);
        let d = OperatorMatrix::diagonal(&[c(1.0, 0.0), c(3.0, 0.0), c(2.0, 0.0)], &w3, "d").unwrap();
        let s = d.singular_values();
        for (x, e) in s.iter().zip([3.0, 2.0, 1.0]) {
            assert!((x - e).abs() < 1e-14);
        }

        let u = [c(1.0, 1.0), c(0.5, 0.0), c(0.0, -2.0)];
        let v = [c(0.3, 0.0), c(-1.0, 0.2), c(2.0, 0.0)];
        let rank_one = DMatrix::from_fn(3, 3, |i, j| u[i] * v[j].conj());
        let op = OperatorMatrix::from_entries(rank_one, &w3, "uv*").unwrap();
        let s = op.singular_values();
        let norm = |x: &[Complex<f64>]| x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((s[0] - norm(&u) * norm(&v)).abs() < 1e-13);
        assert!(s[1] < 1e-14 && s[2] < 1e-14);
    }

    #[test]
    fn rank_examples() {
        let w = W::hardy(2);
        let d = OperatorMatrix::diagonal(&[c(1.0, 0.0), c(1e-3, 0.0), c(1e-12, 0.0)], &w, "d").unwrap();
        assert_eq!(d.numerical_rank(1e-8), 2);
        let z = OperatorMatrix::from_entries(DMatrix::zeros(3, 3), &w, "0").unwrap();
        assert_eq!(z.numerical_rank(1e-8), 0);
        let w5 = W::hardy(5);
        assert_eq!(OperatorMatrix::identity(&w5).numerical_rank(0.999), 6);
    }

    #[test]
    fn basis_image_norm_examples() {
        let w = W::hardy(5);
        assert_eq!(OperatorMatrix::identity(&w).basis_image_norms(), vec![1.0; 6]);
        let vals: Vec<_> = (0..6).map(|n| c(1.0 / (n + 1) as f64, 0.0)).collect();
        let d = OperatorMatrix::diagonal(&vals, &w, "d").unwrap();
        for (n, p) in d.basis_image_norms().iter().enumerate() {
            assert!((p - 1.0 / (n + 1) as f64).abs() < 1e-16);
        }
        let z = OperatorMatrix::from_entries(DMatrix::zeros(6, 6), &w, "0").unwrap();
        assert_eq!(z.basis_image_norms(), vec![0.0; 6]);
    }

    #[test]
    fn leading_block_examples() {
        let w = W::hardy(8);
        let i = OperatorMatrix::identity(&w);
        let b = i.leading_block(3).unwrap();
        assert_eq!(b.entries(), &DMatrix::<Complex<f64>>::identity(4, 4));
        assert_eq!(b.weights().order(), 3);

        let a = composition_matrix(&example(), &w, 8).unwrap();
        assert_eq!(a.leading_block(8).unwrap(), a);
        assert_eq!(
            a.leading_block(9).unwrap_err(),
            Error::BlockOutOfRange { k: 9, order: 8 }
        );

        // lower-triangular factors: block of product = product of blocks
        let g = multiplication_matrix(&TruncatedSeries::linear(c(1.0, 0.0), c(0.5, 0.0), 8), &w, 8).unwrap();
        let lhs = a.product(&g).unwrap().leading_block(4).unwrap();
        let rhs = a
            .leading_block(4)
            .unwrap()
            .product(&g.leading_block(4).unwrap())
            .unwrap();
        assert_eq!(lhs.entries(), rhs.entries());

        // otherwise the blocks differ
        let full = multiplication_matrix(
            &TruncatedSeries::one(8).div_linear(c(1.0, 0.0), c(-0.5, 0.0)).unwrap(),
            &w,
            8,
        )
        .unwrap();
        let lhs = full.adjoint().product(&a).unwrap().leading_block(4).unwrap();
        let rhs = full
            .adjoint()
            .leading_block(4)
            .unwrap()
            .product(&a.leading_block(4).unwrap())
            .unwrap();
        assert!(lhs.difference(&rhs).unwrap().max_abs_entry() > 1e-3);
    }

    #[test]
    fn leading_block_of_product_matches_full_product() {
        let w = W::dirichlet_s2(10);
        let a = composition_matrix(&example().krein_adjoint(), &w, 10).unwrap();
        let g = multiplication_matrix(&TruncatedSeries::linear(c(1.0, 0.0), c(0.5, 0.1), 10), &w, 10).unwrap();
        let ga = g.adjoint();
        let full = ga.product(&a).unwrap().product(&g).unwrap().leading_block(6).unwrap();
        let fast = leading_block_of_product(&[&ga, &a, &g], 6).unwrap();
        assert!(full.difference(&fast).unwrap().max_abs_entry() < 1e-13);
        assert_eq!(
            leading_block_of_product(&[&a], 3).unwrap().entries(),
            a.leading_block(3).unwrap().entries()
        );
    }

    #[test]
    fn change_basis_round_trip() {
        let w1 = W::a2alpha(-3.0, 10).unwrap();
        let w2 = W::dirichlet_s2(10);
        let a1 = composition_matrix(&example(), &w1, 10).unwrap();
        let a2 = composition_matrix(&example(), &w2, 10).unwrap();
        let moved = a1.change_basis(&w2).unwrap();
        assert!(moved.difference(&a2).unwrap().max_abs_entry() < 1e-12);
        let back = moved.change_basis(&w1).unwrap();
        assert!(back.difference(&a1).unwrap().max_abs_entry() < 1e-12);
    }
}
