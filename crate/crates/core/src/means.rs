//! Weighted arithmetic and geometric operator means.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::HermitianMatrix;

pub use crate::linalg::quadratic_form;

/// Weight `α ∈ [0, 1]`, with the conjugate exponents `p = 1/(1−α)`, `q = 1/α`
/// available when `α` is interior.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Weight {
    alpha: f64,
}

impl Weight {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::invalid(format!("weight must lie in [0, 1], got {alpha}")));
        }
        Ok(Weight { alpha })
    }

    /// The weight `α = 1/q` for Hölder exponent `p > 1`, `q = p/(p−1)`.
    pub fn from_exponent(p: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::invalid(format!("exponent p must be finite and > 1, got {p}")));
        }
        let q = p / (p - 1.0);
        Ok(Weight { alpha: 1.0 / q })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `R = max{α, 1−α}`.
    pub fn r_exponent(&self) -> f64 {
        self.alpha.max(1.0 - self.alpha)
    }

    pub fn is_interior(&self) -> bool {
        self.alpha > 0.0 && self.alpha < 1.0
    }

    pub fn p(&self) -> Option<f64> {
        self.is_interior().then(|| 1.0 / (1.0 - self.alpha))
    }

    pub fn q(&self) -> Option<f64> {
        self.is_interior().then(|| 1.0 / self.alpha)
    }

    /// `(p, q)`, or `RequirementsUnmet` at the endpoints.
    pub fn exponents(&self) -> Result<(f64, f64)> {
        match (self.p(), self.q()) {
            (Some(p), Some(q)) => Ok((p, q)),
            _ => Err(Error::unmet(format!(
                "conjugate exponents need an interior weight, got α = {}",
                self.alpha
            ))),
        }
    }

    pub fn flipped(&self) -> Weight {
        Weight {
            alpha: 1.0 - self.alpha,
        }
    }
}

/// `A ∇_α B = (1−α)A + αB`.
pub fn arithmetic_mean(a: &HermitianMatrix, b: &HermitianMatrix, w: Weight) -> Result<HermitianMatrix> {
    let alpha = w.alpha();
    a.scale(1.0 - alpha).add(&b.scale(alpha))
}

/// `A ♯_α B = A^{1/2} (A^{−1/2} B A^{−1/2})^α A^{1/2}`.
pub fn geometric_mean(a: &HermitianMatrix, b: &HermitianMatrix, w: Weight) -> Result<HermitianMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let (root, inv_root) = a.sqrt_and_inv_sqrt()?;
    // B > 0 iff A^{-1/2} B A^{-1/2} > 0, so the inner matrix doubles as the check on B.
    let inner = b.sandwiched_by(&inv_root)?;
    let inner_min = inner.min_eigenvalue()?;
    if !(inner_min > 0.0) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: b.min_eigenvalue()?,
        });
    }
    let alpha = w.alpha();
    if alpha == 0.0 {
        Ok(a.clone())
    } else if alpha == 1.0 {
        Ok(b.clone())
    } else {
        inner.pow(alpha)?.sandwiched_by(&root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{loewner_margin, real_vector, C64};
    use approx::assert_abs_diff_eq;

    fn close(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) -> bool {
        (a.entries() - b.entries()).norm() <= tol * b.frobenius_norm().max(1.0)
    }

    #[test]
    fn weight_exponents() {
        let w = Weight::from_exponent(3.0).unwrap();
        let (p, q) = w.exponents().unwrap();
        assert!((1.0 / p + 1.0 / q - 1.0).abs() < 1e-14);
        assert_eq!(w.alpha(), 1.0 / 1.5);
        assert!(Weight::new(0.0).unwrap().exponents().is_err());
        assert!(Weight::new(1.2).is_err());
        assert!(Weight::from_exponent(1.0).is_err());
        assert_eq!(Weight::new(0.3).unwrap().r_exponent(), 0.7);
    }

    #[test]
    fn arithmetic_examples() {
        let d = HermitianMatrix::diag(&[1.0, 2.0]);
        for alpha in [0.0, 0.3, 1.0] {
            assert!(close(
                &arithmetic_mean(&d, &d, Weight::new(alpha).unwrap()).unwrap(),
                &d,
                1e-15
            ));
        }
        let m = arithmetic_mean(
            &HermitianMatrix::diag(&[0.0, 0.0]),
            &HermitianMatrix::diag(&[2.0, 4.0]),
            Weight::new(0.5).unwrap(),
        )
        .unwrap();
        assert_eq!(m, HermitianMatrix::diag(&[1.0, 2.0]));

        let a = HermitianMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let m = arithmetic_mean(&a, &HermitianMatrix::identity(2), Weight::new(0.25).unwrap()).unwrap();
        let want = HermitianMatrix::from_rows(&[&[1.75, 0.75], &[0.75, 1.75]]).unwrap();
        assert!(close(&m, &want, 1e-15));
    }

    #[test]
    fn geometric_idempotent() {
        let a = HermitianMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let g = geometric_mean(&a, &a, Weight::new(0.3).unwrap()).unwrap();
        assert!(close(&g, &a, 1e-13));
    }

    #[test]
    fn geometric_commuting_formula() {
        let g = geometric_mean(
            &HermitianMatrix::diag(&[1.0, 4.0]),
            &HermitianMatrix::diag(&[4.0, 1.0]),
            Weight::new(0.5).unwrap(),
        )
        .unwrap();
        assert!(close(&g, &HermitianMatrix::diag(&[2.0, 2.0]), 1e-14));
    }

    #[test]
    fn geometric_mean_solves_riccati_equation() {
        // G = A ♯_{1/2} B is the positive solution of G A^{-1} G = B.
        let a = HermitianMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 1.0]]).unwrap();
        let b = HermitianMatrix::identity(2);
        let g = geometric_mean(&a, &b, Weight::new(0.5).unwrap()).unwrap();
        let a_inv = a.entries().clone().try_inverse().unwrap();
        let lhs = g.entries() * a_inv * g.entries();
        assert!((lhs - b.entries()).norm() < 1e-13);
    }

    #[test]
    fn geometric_endpoints_and_errors() {
        let a = HermitianMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let b = HermitianMatrix::diag(&[3.0, 0.5]);
        assert_eq!(geometric_mean(&a, &b, Weight::new(0.0).unwrap()).unwrap(), a);
        assert_eq!(geometric_mean(&a, &b, Weight::new(1.0).unwrap()).unwrap(), b);
        let singular = HermitianMatrix::diag(&[1.0, 0.0]);
        assert!(matches!(
            geometric_mean(&singular, &b, Weight::new(0.5).unwrap()),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(
            geometric_mean(&a, &HermitianMatrix::diag(&[1.0, -1.0]), Weight::new(0.5).unwrap()),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(
            geometric_mean(&a, &HermitianMatrix::identity(3), Weight::new(0.5).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn young_on_fixed_pair() {
        let a = HermitianMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let b = HermitianMatrix::diag(&[3.0, 0.5]);
        for k in 0..=10 {
            let w = Weight::new(k as f64 / 10.0).unwrap();
            let m = loewner_margin(
                &geometric_mean(&a, &b, w).unwrap(),
                &arithmetic_mean(&a, &b, w).unwrap(),
                1e-9,
            )
            .unwrap();
            assert!(m.passes, "α = {}: {m:?}", w.alpha());
        }
    }

    #[test]
    fn quadratic_form_of_complex_vector() {
        let a = HermitianMatrix::diag(&[2.0, 3.0]);
        let xi = crate::linalg::CVector::from_vec(vec![C64::new(0.0, 1.0), C64::new(1.0, 0.0)]);
        assert_abs_diff_eq!(quadratic_form(&a, &xi).unwrap(), 5.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            quadratic_form(&a, &real_vector(&[1.0, 0.0])).unwrap(),
            2.0,
            epsilon = 1e-15
        );
    }
}
