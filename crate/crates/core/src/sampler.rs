//! Seeded generation of test inputs.
//!
//! Every generator takes an explicit `u64` seed and is bit-for-bit
//! reproducible. Per-trial seeds come from [`derive_seed`], so the order in
//! which trials execute never changes what they draw.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, HermitianMatrix, C64};

pub const DEFAULT_COND_MAX: f64 = 1e4;

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable stream derivation from a master seed and a stream index.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix64(mix64(master) ^ index.wrapping_mul(0xd1b5_4a32_d192_ed03))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of `R`'s diagonal folded back into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let n = d.norm();
        if n > 0.0 {
            let phase = d / n;
            for i in 0..dim {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// `U diag(values) U*` with a fresh random unitary; the cache is seeded exactly.
pub fn hermitian_with_spectrum<R: Rng + ?Sized>(values: &[f64], rng: &mut R) -> HermitianMatrix {
    let u = random_unitary(values.len(), rng);
    let mut scaled = u.clone();
    for (j, &v) in values.iter().enumerate() {
        scaled.column_mut(j).scale_mut(v);
    }
    let m = scaled * u.adjoint();
    let entries = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    HermitianMatrix::with_spectrum(entries, values.to_vec(), u)
}

/// Spectrum drawn uniformly from `[lo, hi]`, forcing both endpoints when `dim ≥ 2`.
pub(crate) fn endpoint_spectrum<R: Rng + ?Sized>(dim: usize, lo: f64, hi: f64, rng: &mut R) -> Vec<f64> {
    (0..dim)
        .map(|i| match i {
            0 => lo,
            1 => hi,
            _ => lo + (hi - lo) * rng.random::<f64>(),
        })
        .collect()
}

/// Spectrum drawn uniformly from the open interval `(lo, hi)`.
fn open_spectrum<R: Rng + ?Sized>(dim: usize, lo: f64, hi: f64, rng: &mut R) -> Vec<f64> {
    (0..dim)
        .map(|_| {
            let u: f64 = rng.random_range(f64::EPSILON..1.0);
            lo + (hi - lo) * u
        })
        .collect()
}

pub(crate) fn random_hpd_with<R: Rng + ?Sized>(dim: usize, cond_max: f64, rng: &mut R) -> HermitianMatrix {
    // λ_min spread over a decade so constants see a range of magnitudes
    let base = 10f64.powf(rng.random_range(-1.0..0.0));
    let log_cond = cond_max.ln();
    let values: Vec<f64> = (0..dim)
        .map(|_| base * (log_cond * rng.random::<f64>()).exp())
        .collect();
    hermitian_with_spectrum(&values, rng)
}

pub(crate) fn random_in_interval_with<R: Rng + ?Sized>(dim: usize, lo: f64, hi: f64, rng: &mut R) -> HermitianMatrix {
    let values = open_spectrum(dim, lo, hi, rng);
    hermitian_with_spectrum(&values, rng)
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    Ok(())
}

/// Positive definite matrix with condition number at most `cond_max`.
pub fn random_hpd(dim: usize, cond_max: f64, seed: u64) -> Result<HermitianMatrix> {
    check_dim(dim)?;
    if !(cond_max >= 1.0) || !cond_max.is_finite() {
        return Err(Error::invalid(format!(
            "cond_max must be finite and ≥ 1, got {cond_max}"
        )));
    }
    Ok(random_hpd_with(dim, cond_max, &mut rng_from_seed(seed)))
}

/// Hermitian matrix with spectrum in the open interval `(lo, hi)`.
pub fn random_hermitian_in(dim: usize, lo: f64, hi: f64, seed: u64) -> Result<HermitianMatrix> {
    check_dim(dim)?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::invalid(format!("invalid interval ({lo}, {hi})")));
    }
    Ok(random_in_interval_with(dim, lo, hi, &mut rng_from_seed(seed)))
}

/// A pair with `sA ≤ B ≤ tA`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SandwichPair {
    pub a: HermitianMatrix,
    pub b: HermitianMatrix,
    pub s: f64,
    pub t: f64,
}

impl SandwichPair {
    /// Checks the sandwich through the spectrum of `A^{−1/2} B A^{−1/2}`
    /// with relative slack `rel_tol` on both ends.
    pub fn holds(&self, rel_tol: f64) -> Result<bool> {
        let (lo, hi) = tightest_sandwich(&self.a, &self.b)?;
        Ok(lo >= self.s * (1.0 - rel_tol) && hi <= self.t * (1.0 + rel_tol))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichOptions {
    pub cond_max: f64,
    /// Use `A = I` instead of drawing `A`.
    pub identity_a: bool,
}

impl Default for SandwichOptions {
    fn default() -> Self {
        SandwichOptions {
            cond_max: DEFAULT_COND_MAX,
            identity_a: false,
        }
    }
}

fn check_st(s: f64, t: f64) -> Result<()> {
    if !(s > 0.0) || !(s <= t) || !t.is_finite() {
        return Err(Error::invalid(format!("need 0 < s ≤ t < ∞, got s = {s}, t = {t}")));
    }
    Ok(())
}

pub(crate) fn sandwich_pair_with<R: Rng + ?Sized>(
    dim: usize,
    s: f64,
    t: f64,
    opts: SandwichOptions,
    rng: &mut R,
) -> Result<SandwichPair> {
    let a = if opts.identity_a {
        HermitianMatrix::identity(dim)
    } else {
        random_hpd_with(dim, opts.cond_max, rng)
    };
    let c = hermitian_with_spectrum(&endpoint_spectrum(dim, s, t, rng), rng);
    let (root, _) = a.sqrt_and_inv_sqrt()?;
    let b = c.sandwiched_by(&root)?;
    Ok(SandwichPair { a, b, s, t })
}

/// `B = A^{1/2} C A^{1/2}` where `C` has spectrum in `[s, t]` hitting both
/// endpoints (only `s` when `dim = 1`).
pub fn random_sandwich_pair(dim: usize, s: f64, t: f64, seed: u64) -> Result<SandwichPair> {
    random_sandwich_pair_with_options(dim, s, t, seed, SandwichOptions::default())
}

pub fn random_sandwich_pair_with_options(
    dim: usize,
    s: f64,
    t: f64,
    seed: u64,
    opts: SandwichOptions,
) -> Result<SandwichPair> {
    check_dim(dim)?;
    check_st(s, t)?;
    if !(opts.cond_max >= 1.0) {
        return Err(Error::invalid(format!("cond_max must be ≥ 1, got {}", opts.cond_max)));
    }
    sandwich_pair_with(dim, s, t, opts, &mut rng_from_seed(seed))
}

/// Extreme eigenvalues of `A^{−1/2} B A^{−1/2}`: the best `s`, `t` with `sA ≤ B ≤ tA`.
pub fn tightest_sandwich(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<(f64, f64)> {
    let (_, inv_root) = a.sqrt_and_inv_sqrt()?;
    let c = b.sandwiched_by(&inv_root)?;
    let spectral = c.spectral()?;
    if !(spectral.min() > 0.0) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: b.min_eigenvalue()?,
        });
    }
    Ok((spectral.min(), spectral.max()))
}

pub(crate) fn commuting_pair_with<R: Rng + ?Sized>(
    dim: usize,
    lo: f64,
    hi: f64,
    rng: &mut R,
) -> (HermitianMatrix, HermitianMatrix) {
    let u = random_unitary(dim, rng);
    let build = |values: Vec<f64>| {
        let mut scaled = u.clone();
        for (j, &v) in values.iter().enumerate() {
            scaled.column_mut(j).scale_mut(v);
        }
        let m = scaled * u.adjoint();
        let entries = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        HermitianMatrix::with_spectrum(entries, values, u.clone())
    };
    let a = build(open_spectrum(dim, lo, hi, rng));
    let b = build(open_spectrum(dim, lo, hi, rng));
    (a, b)
}

/// Two matrices sharing a random eigenbasis, spectra in `(lo, hi)`.
pub fn random_commuting_pair(dim: usize, lo: f64, hi: f64, seed: u64) -> Result<(HermitianMatrix, HermitianMatrix)> {
    check_dim(dim)?;
    if !(0.0 < lo && lo < hi) || !hi.is_finite() {
        return Err(Error::invalid(format!("need 0 < lo < hi < ∞, got ({lo}, {hi})")));
    }
    Ok(commuting_pair_with(dim, lo, hi, &mut rng_from_seed(seed)))
}

pub(crate) fn unit_vector_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVector {
    loop {
        let v = CVector::from_fn(dim, |_, _| complex_gaussian(rng));
        let n = v.norm();
        if n > 1e-12 {
            return v.unscale(n);
        }
    }
}

pub fn random_unit_vector(dim: usize, seed: u64) -> Result<CVector> {
    check_dim(dim)?;
    Ok(unit_vector_with(dim, &mut rng_from_seed(seed)))
}

/// Positive sequences with dominant first terms in the `p`- and `q`-norms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AczelSequences {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub p: f64,
    pub q: f64,
}

impl AczelSequences {
    pub fn new(a: Vec<f64>, b: Vec<f64>, p: f64) -> Result<Self> {
        if a.len() != b.len() || a.len() < 2 {
            return Err(Error::invalid("sequences must have equal length ≥ 2"));
        }
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::invalid(format!("p must be finite and > 1, got {p}")));
        }
        if a.iter().chain(&b).any(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(Error::invalid("sequence terms must be positive and finite"));
        }
        Ok(AczelSequences {
            a,
            b,
            p,
            q: p / (p - 1.0),
        })
    }

    /// `x₁^r − Σ_{i≥2} x_i^r`.
    pub fn lorentz_gap(x: &[f64], r: f64) -> f64 {
        x[0].powf(r) - x[1..].iter().map(|v| v.powf(r)).sum::<f64>()
    }

    pub fn dominant(&self) -> bool {
        Self::lorentz_gap(&self.a, self.p) > 0.0 && Self::lorentz_gap(&self.b, self.q) > 0.0
    }
}

pub(crate) fn aczel_sequences_with<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<AczelSequences> {
    let q = p / (p - 1.0);
    let mut a: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..2.0)).collect();
    let mut b: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..2.0)).collect();
    let tail_a: f64 = a[1..].iter().map(|x| x.powf(p)).sum();
    let tail_b: f64 = b[1..].iter().map(|x| x.powf(q)).sum();
    a[0] = rng.random_range(1.1..5.0) * tail_a.powf(1.0 / p);
    b[0] = rng.random_range(1.1..5.0) * tail_b.powf(1.0 / q);
    AczelSequences::new(a, b, p)
}

/// Tail terms first, then `a₁ = c·(Σ a_i^p)^{1/p}`, `b₁ = c′·(Σ b_i^q)^{1/q}`
/// with margin factors `c, c′ ∈ [1.1, 5)`.
pub fn aczel_sequences(n: usize, p: f64, seed: u64) -> Result<AczelSequences> {
    if n < 2 {
        return Err(Error::invalid(format!("need n ≥ 2, got {n}")));
    }
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::invalid(format!("p must be finite and > 1, got {p}")));
    }
    aczel_sequences_with(n, p, &mut rng_from_seed(seed))
}
