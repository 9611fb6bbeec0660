//! Dense Hermitian matrices, spectral functional calculus and the Löwner order.
//!
//! Every matrix carries a lazily computed, write-once eigendecomposition.
//! Functional calculus results reuse the eigenbasis of their argument, so a
//! chain like `g(A^p)` performs one decomposition rather than two.

use std::fmt;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Relative size of the anti-Hermitian part tolerated at construction.
pub const HERMITIAN_REJECT_TOL: f64 = 1e-8;

/// Default relative Löwner tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

const EIGEN_MAX_ITER: usize = 10_000;

/// An open interval `(lo, hi)`; `hi` may be `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const POSITIVE: Interval = Interval {
        lo: 0.0,
        hi: f64::INFINITY,
    };
    pub const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn open(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::invalid(format!("empty interval ({lo}, {hi})")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Eigenvalues in ascending order with the matching unitary eigenvector matrix.
#[derive(Debug, Clone)]
pub struct Spectral {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl Spectral {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// `U diag(values) U*`, symmetrized.
    fn reconstruct(&self, values: &[f64]) -> CMatrix {
        let mut scaled = self.eigenvectors.clone();
        for (j, &v) in values.iter().enumerate() {
            scaled.column_mut(j).scale_mut(v);
        }
        hermitian_part(&(scaled * self.eigenvectors.adjoint()))
    }
}

/// A dense Hermitian matrix with a write-once spectral cache.
#[derive(Clone)]
pub struct HermitianMatrix {
    entries: CMatrix,
    spectral: OnceLock<Spectral>,
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HermitianMatrix")
            .field("dim", &self.dim())
            .field("entries", &self.entries)
            .finish()
    }
}

impl PartialEq for HermitianMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

impl HermitianMatrix {
    /// Symmetrizes `m` via `(M + M*)/2`, rejecting inputs whose anti-Hermitian
    /// part exceeds [`HERMITIAN_REJECT_TOL`] relative to `‖M‖_F`.
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::invalid("matrix dimension must be positive"));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("matrix has non-finite entries"));
        }
        let norm = m.norm();
        let anti = (&m - m.adjoint()).norm() * 0.5;
        let relative = if norm > 0.0 { anti / norm } else { 0.0 };
        if relative > HERMITIAN_REJECT_TOL {
            return Err(Error::NotHermitian { relative });
        }
        Ok(Self::from_entries(hermitian_part(&m)))
    }

    pub fn from_real(m: DMatrix<f64>) -> Result<Self> {
        Self::new(m.map(|x| C64::new(x, 0.0)))
    }

    /// Builds a real matrix from rows.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: rows.first().map_or(0, |r| r.len()),
            });
        }
        Self::from_real(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn identity(dim: usize) -> Self {
        Self::diag(&vec![1.0; dim])
    }

    /// Diagonal matrix; its spectral cache is filled exactly.
    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let entries = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(values[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Self::with_spectrum(entries, values.to_vec(), CMatrix::identity(n, n))
    }

    /// Trusted constructor for matrices that are Hermitian by construction.
    pub(crate) fn from_entries(entries: CMatrix) -> Self {
        HermitianMatrix {
            entries,
            spectral: OnceLock::new(),
        }
    }

    /// Trusted constructor that also seeds the cache; sorts the pairs ascending.
    pub(crate) fn with_spectrum(entries: CMatrix, eigenvalues: Vec<f64>, vectors: CMatrix) -> Self {
        let spectral = sort_spectrum(eigenvalues, vectors);
        let cache = OnceLock::new();
        let _ = cache.set(spectral);
        HermitianMatrix {
            entries,
            spectral: cache,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// Eigendecomposition, computed once and cached.
    pub fn spectral(&self) -> Result<&Spectral> {
        if let Some(s) = self.spectral.get() {
            return Ok(s);
        }
        let computed = decompose(&self.entries)?;
        // Concurrent fills compute identical data; whichever lands first wins.
        let _ = self.spectral.set(computed);
        Ok(self.spectral.get().expect("cache was just filled"))
    }

    pub fn eigenvalues(&self) -> Result<&[f64]> {
        Ok(&self.spectral()?.eigenvalues)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.spectral()?.min())
    }

    pub fn max_eigenvalue(&self) -> Result<f64> {
        Ok(self.spectral()?.max())
    }

    /// Spectral norm, `max |λ|`.
    pub fn op_norm(&self) -> Result<f64> {
        let s = self.spectral()?;
        Ok(s.min().abs().max(s.max().abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.norm()
    }

    /// `f(A) = U diag(f(λ)) U*`. Every eigenvalue must lie strictly inside `domain`.
    pub fn apply_fn<F>(&self, f: F, domain: Interval) -> Result<HermitianMatrix>
    where
        F: Fn(f64) -> f64,
    {
        let spectral = self.spectral()?;
        let offending: Vec<f64> = spectral
            .eigenvalues
            .iter()
            .copied()
            .filter(|&x| !domain.contains(x))
            .collect();
        if !offending.is_empty() {
            return Err(Error::SpectrumOutsideDomain {
                offending,
                lo: domain.lo,
                hi: domain.hi,
            });
        }
        let values: Vec<f64> = spectral.eigenvalues.iter().map(|&x| f(x)).collect();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("spectral function produced a non-finite value"));
        }
        let entries = spectral.reconstruct(&values);
        Ok(Self::with_spectrum(entries, values, spectral.eigenvectors.clone()))
    }

    /// `A^r`. Non-integer or negative exponents require `A > 0`.
    pub fn pow(&self, r: f64) -> Result<HermitianMatrix> {
        if r == 0.0 {
            return Ok(Self::identity(self.dim()));
        }
        if r == 1.0 {
            return Ok(self.clone());
        }
        if r > 0.0 && r.fract() == 0.0 && r <= i32::MAX as f64 {
            let k = r as i32;
            return self.apply_fn(|x| x.powi(k), Interval::REAL_LINE);
        }
        let min = self.min_eigenvalue()?;
        if !(min > 0.0) {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
        }
        self.apply_fn(|x| x.powf(r), Interval::POSITIVE)
    }

    /// Returns `(A^{1/2}, A^{-1/2})` from a single decomposition.
    pub fn sqrt_and_inv_sqrt(&self) -> Result<(HermitianMatrix, HermitianMatrix)> {
        let min = self.min_eigenvalue()?;
        if !(min > 0.0) {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
        }
        Ok((
            self.apply_fn(f64::sqrt, Interval::POSITIVE)?,
            self.apply_fn(|x| 1.0 / x.sqrt(), Interval::POSITIVE)?,
        ))
    }

    pub fn scale(&self, c: f64) -> HermitianMatrix {
        let entries = &self.entries * C64::new(c, 0.0);
        match self.spectral.get() {
            Some(s) if c > 0.0 => Self::with_spectrum(
                entries,
                s.eigenvalues.iter().map(|x| x * c).collect(),
                s.eigenvectors.clone(),
            ),
            _ => Self::from_entries(entries),
        }
    }

    pub fn add(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        check_dims(self, other)?;
        Ok(Self::from_entries(&self.entries + &other.entries))
    }

    pub fn sub(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        check_dims(self, other)?;
        Ok(Self::from_entries(&self.entries - &other.entries))
    }

    /// `X A X` for Hermitian `X`, which is Hermitian again.
    pub fn sandwiched_by(&self, outer: &HermitianMatrix) -> Result<HermitianMatrix> {
        check_dims(self, outer)?;
        let m = &outer.entries * &self.entries * &outer.entries;
        Ok(Self::from_entries(hermitian_part(&m)))
    }

    /// `T A T*` for an arbitrary square `T`.
    pub fn congruence(&self, t: &CMatrix) -> Result<HermitianMatrix> {
        if t.nrows() != self.dim() || t.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: t.nrows(),
            });
        }
        let m = t * &self.entries * t.adjoint();
        Ok(Self::from_entries(hermitian_part(&m)))
    }

    /// Plain matrix product; Hermitian only when the factors commute.
    pub fn product(&self, other: &HermitianMatrix) -> Result<CMatrix> {
        check_dims(self, other)?;
        Ok(&self.entries * &other.entries)
    }

    /// `‖AB − BA‖_F`.
    pub fn commutator_norm(&self, other: &HermitianMatrix) -> Result<f64> {
        check_dims(self, other)?;
        let ab = &self.entries * &other.entries;
        let ba = &other.entries * &self.entries;
        Ok((ab - ba).norm())
    }

    pub fn to_document(&self) -> MatrixDocument {
        let n = self.dim();
        let real = (0..n)
            .map(|i| (0..n).map(|j| self.entries[(i, j)].re).collect())
            .collect();
        let imag = if self.is_real() {
            None
        } else {
            Some(
                (0..n)
                    .map(|i| (0..n).map(|j| self.entries[(i, j)].im).collect())
                    .collect(),
            )
        };
        MatrixDocument { dim: n, real, imag }
    }

    pub fn from_document(doc: &MatrixDocument) -> Result<Self> {
        let n = doc.dim;
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if n == 0 || !shape_ok(&doc.real) {
            return Err(Error::Format(format!("\"real\" must be a {n}x{n} array")));
        }
        if let Some(imag) = &doc.imag {
            if !shape_ok(imag) {
                return Err(Error::Format(format!("\"imag\" must be a {n}x{n} array")));
            }
        }
        let m = CMatrix::from_fn(n, n, |i, j| {
            let im = doc.imag.as_ref().map_or(0.0, |rows| rows[i][j]);
            C64::new(doc.real[i][j], im)
        });
        Self::new(m)
    }
}

/// Row-major JSON form: `{"dim": n, "real": [[...]], "imag": [[...]]}`, `imag` optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub dim: usize,
    pub real: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imag: Option<Vec<Vec<f64>>>,
}

impl Serialize for HermitianMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_document().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = MatrixDocument::deserialize(deserializer)?;
        HermitianMatrix::from_document(&doc).map_err(serde::de::Error::custom)
    }
}

fn check_dims(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

fn sort_spectrum(eigenvalues: Vec<f64>, vectors: CMatrix) -> Spectral {
    let mut order: Vec<usize> = (0..eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eigenvalues[i].total_cmp(&eigenvalues[j]));
    if order.iter().enumerate().all(|(k, &i)| k == i) {
        return Spectral {
            eigenvalues,
            eigenvectors: vectors,
        };
    }
    let sorted_values = order.iter().map(|&i| eigenvalues[i]).collect();
    let sorted_vectors = CMatrix::from_fn(vectors.nrows(), vectors.ncols(), |r, c| vectors[(r, order[c])]);
    Spectral {
        eigenvalues: sorted_values,
        eigenvectors: sorted_vectors,
    }
}

fn decompose(entries: &CMatrix) -> Result<Spectral> {
    let n = entries.nrows();
    match entries.clone().try_symmetric_eigen(f64::EPSILON, EIGEN_MAX_ITER) {
        Some(eig) => Ok(sort_spectrum(
            eig.eigenvalues.iter().copied().collect(),
            eig.eigenvectors,
        )),
        None => {
            // Crude: Frobenius norm over the smallest diagonal magnitude.
            let min_diag = (0..n).map(|i| entries[(i, i)].norm()).fold(f64::INFINITY, f64::min);
            Err(Error::DecompositionFailed {
                dim: n,
                condition_estimate: entries.norm() / min_diag,
            })
        }
    }
}

/// Eigendecomposition `A = U diag(λ) U*`, λ ascending.
pub fn spectral_decompose(a: &HermitianMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let s = a.spectral()?;
    Ok((s.eigenvalues.clone(), s.eigenvectors.clone()))
}

pub fn apply_spectral_function<F>(a: &HermitianMatrix, f: F, domain: Interval) -> Result<HermitianMatrix>
where
    F: Fn(f64) -> f64,
{
    a.apply_fn(f, domain)
}

pub fn matrix_power(a: &HermitianMatrix, r: f64) -> Result<HermitianMatrix> {
    a.pow(r)
}

/// Numerical realization of `L ≤ U`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoewnerMargin {
    /// Smallest eigenvalue of `U − L`.
    pub min_eigenvalue: f64,
    /// `max(1, ‖L‖, ‖U‖)`.
    pub relative_scale: f64,
    pub tol: f64,
    pub passes: bool,
}

impl LoewnerMargin {
    pub fn new(min_eigenvalue: f64, relative_scale: f64, tol: f64) -> Self {
        LoewnerMargin {
            min_eigenvalue,
            relative_scale,
            tol,
            passes: min_eigenvalue >= -tol * relative_scale,
        }
    }

    pub fn relative(&self) -> f64 {
        self.min_eigenvalue / self.relative_scale
    }
}

pub fn loewner_margin(lower: &HermitianMatrix, upper: &HermitianMatrix, tol: f64) -> Result<LoewnerMargin> {
    if !(tol >= 0.0) {
        return Err(Error::invalid(format!("tolerance must be non-negative, got {tol}")));
    }
    let diff = upper.sub(lower)?;
    let min = diff.min_eigenvalue()?;
    let scale = 1f64.max(lower.op_norm()?).max(upper.op_norm()?);
    Ok(LoewnerMargin::new(min, scale, tol))
}

/// `λ_min(A) > tol · max(1, ‖A‖)`; false if the decomposition fails.
pub fn is_positive_definite(a: &HermitianMatrix, tol: f64) -> bool {
    match (a.min_eigenvalue(), a.op_norm()) {
        (Ok(min), Ok(norm)) => min > tol * norm.max(1.0),
        _ => false,
    }
}

/// `Re ⟨A ξ, ξ⟩`.
pub fn quadratic_form(a: &HermitianMatrix, xi: &CVector) -> Result<f64> {
    if xi.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: xi.len(),
        });
    }
    Ok(xi.dotc(&(a.entries() * xi)).re)
}

pub fn real_vector(values: &[f64]) -> CVector {
    CVector::from_iterator(values.len(), values.iter().map(|&x| C64::new(x, 0.0)))
}
