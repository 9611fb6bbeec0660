use rand::seq::IndexedRandom;
use rand::Rng;

use super::cases::{FunctionNeed, InequalityCase, Operands, VectorNeed};
use super::check::{CaseInputs, SpectralBounds};
use crate::error::Result;
use crate::functions::{catalog, DecreasingFunction};
use crate::linalg::{CVector, HermitianMatrix};
use crate::means::Weight;
use crate::sampler::{
    aczel_sequences_with, commuting_pair_with, endpoint_spectrum, hermitian_with_spectrum, random_hpd_with,
    random_in_interval_with, rng_from_seed, sandwich_pair_with, unit_vector_with, SandwichOptions,
};

/// `α ∈ {0.05, 0.10, …, 0.95}`.
pub fn alpha_grid() -> Vec<f64> {
    (1..=19).map(|k| k as f64 * 0.05).collect()
}

/// Sandwich constants used for generic cases.
pub const SANDWICH_GRID: [(f64, f64); 8] = [
    (0.1, 0.5),
    (0.3, 1.0),
    (0.5, 2.0),
    (0.8, 1.25),
    (1.0, 3.0),
    (0.2, 5.0),
    (2.0, 5.0),
    (0.25, 4.0),
];

/// Sandwich constants with `t ≤ 1`, for the `M_α` cases.
pub const UNIT_SANDWICH_GRID: [(f64, f64); 6] =
    [(0.1, 1.0), (0.3, 1.0), (0.5, 0.9), (0.2, 0.5), (0.8, 1.0), (0.05, 1.0)];

pub const LAMBDA_GRID: [f64; 4] = [1.0, 1.5, 2.0, 10.0];

pub const SEQUENCE_EXPONENTS: [f64; 3] = [1.5, 2.0, 4.0];

/// Spectra of the commuting / unit-interval cases stay inside this range.
const UNIT_RANGE: (f64, f64) = (0.01, 0.99);
const POSITIVE_RANGE: (f64, f64) = (0.1, 10.0);

fn pick_function<R: Rng + ?Sized>(need: FunctionNeed, rng: &mut R) -> Option<DecreasingFunction> {
    let pool: Vec<DecreasingFunction> = catalog()
        .into_iter()
        .filter(|g| match need {
            FunctionNeed::None => false,
            FunctionNeed::PositiveAxis => g.on_positive_axis(),
            FunctionNeed::OperatorConcave => g.operator_concave(),
        })
        .collect();
    pool.choose(rng).cloned()
}

fn pick_weight<R: Rng + ?Sized>(rng: &mut R) -> Weight {
    let alphas = alpha_grid();
    Weight::new(*alphas.choose(rng).expect("nonempty grid")).expect("grid is inside (0, 1)")
}

fn scaled_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVector {
    let v = unit_vector_with(dim, rng);
    v * crate::linalg::C64::new(rng.random_range(0.5..3.0), 0.0)
}

fn spectrum_between<R: Rng + ?Sized>(dim: usize, lo: f64, hi: f64, rng: &mut R) -> HermitianMatrix {
    hermitian_with_spectrum(&endpoint_spectrum(dim, lo, hi, rng), rng)
}

/// Draws inputs meeting the hypotheses of `case` at dimension `dim`.
///
/// Sequence cases use length `max(dim, 2)`.
pub fn generate_inputs(case: InequalityCase, dim: usize, seed: u64, cond_max: f64) -> Result<CaseInputs> {
    use InequalityCase::*;

    let rng = &mut rng_from_seed(seed);
    let req = case.requirements();
    let mut inputs = CaseInputs {
        function: pick_function(req.function, rng),
        ..Default::default()
    };
    let opts = SandwichOptions {
        cond_max,
        identity_a: false,
    };

    match req.operands {
        Operands::Pair => {
            inputs.weight = Some(pick_weight(rng));
            inputs.a = Some(random_hpd_with(dim, cond_max, rng));
            inputs.b = Some(random_hpd_with(dim, cond_max, rng));
        }
        Operands::SeparatedSpectra => {
            inputs.weight = Some(pick_weight(rng));
            let m = 10f64.powf(rng.random_range(-1.0..0.0));
            let m_inner = m * rng.random_range(1.0..10.0);
            let big_inner = m_inner * rng.random_range(1.0..10.0);
            let big = big_inner * rng.random_range(1.0..10.0);
            let low = spectrum_between(dim, m, m_inner, rng);
            let high = spectrum_between(dim, big_inner, big, rng);
            let (a, b) = if rng.random::<bool>() { (low, high) } else { (high, low) };
            inputs.a = Some(a);
            inputs.b = Some(b);
            inputs.spectral_bounds = Some(SpectralBounds {
                m,
                m_inner,
                big_inner,
                big,
            });
        }
        Operands::Sandwich | Operands::PowerSandwich => {
            let w = pick_weight(rng);
            inputs.weight = Some(w);
            let grid: &[(f64, f64)] = if req.max_t.is_some() {
                &UNIT_SANDWICH_GRID
            } else {
                &SANDWICH_GRID
            };
            let &(s, t) = grid.choose(rng).expect("nonempty grid");
            let pair = sandwich_pair_with(dim, s, t, opts, rng)?;
            if req.operands == Operands::Sandwich {
                inputs.a = Some(pair.a);
                inputs.b = Some(pair.b);
            } else {
                let (p, q) = w.exponents()?;
                inputs.a = Some(pair.a.pow(1.0 / p)?);
                inputs.b = Some(pair.b.pow(1.0 / q)?);
            }
            inputs.sandwich = Some((s, t));
        }
        Operands::UnitIntervalPowers => {
            let w = pick_weight(rng);
            inputs.weight = Some(w);
            let (p, q) = w.exponents()?;
            let x = random_in_interval_with(dim, UNIT_RANGE.0, UNIT_RANGE.1, rng);
            let y = random_in_interval_with(dim, UNIT_RANGE.0, UNIT_RANGE.1, rng);
            inputs.a = Some(x.pow(1.0 / p)?);
            inputs.b = Some(y.pow(1.0 / q)?);
        }
        Operands::CommutingUnitInterval | Operands::CommutingPositive => {
            // the hypotheses constrain A^p and B^q, so those are drawn first
            let w = pick_weight(rng);
            inputs.weight = Some(w);
            let (p, q) = w.exponents()?;
            let (lo, hi) = if req.operands == Operands::CommutingUnitInterval {
                UNIT_RANGE
            } else {
                POSITIVE_RANGE
            };
            let (x, y) = commuting_pair_with(dim, lo, hi, rng);
            inputs.a = Some(x.pow(1.0 / p)?);
            inputs.b = Some(y.pow(1.0 / q)?);
        }
        Operands::Single => {
            inputs.a = Some(random_hpd_with(dim, cond_max, rng));
            inputs.lambda = LAMBDA_GRID.choose(rng).copied();
        }
        Operands::Sequences => {
            let &p = SEQUENCE_EXPONENTS.choose(rng).expect("nonempty grid");
            inputs.sequences = Some(aczel_sequences_with(dim.max(2), p, rng)?);
        }
        Operands::InnerProduct => {
            let x = scaled_vector(dim, rng);
            let y = scaled_vector(dim, rng);
            let a = x.norm() * rng.random_range(1.01..3.0);
            let b = y.norm() * rng.random_range(0.2..3.0);
            inputs.reals = Some((a, b));
            inputs.vectors = Some((x, y));
        }
    }

    inputs.xi = match req.vector {
        VectorNeed::None => None,
        VectorNeed::Any => Some(scaled_vector(dim, rng)),
        VectorNeed::Unit => Some(unit_vector_with(dim, rng)),
    };
    debug_assert!(case != Lemma2_3 || inputs.lambda.is_some());
    Ok(inputs)
}
