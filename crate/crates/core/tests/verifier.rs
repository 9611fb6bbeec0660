use aczel_core::constants::kantorovich_bound;
use aczel_core::functions::{apply, by_id};
use aczel_core::linalg::{quadratic_form, real_vector};
use aczel_core::sampler::{derive_seed, random_sandwich_pair, rng_from_seed, tightest_sandwich};
use aczel_core::verifier::{
    check_case, generate_inputs, run_suite, tightness_table, trial_seed, CaseInputs, InequalityCase, SuiteConfig,
};
use aczel_core::{arithmetic_mean, geometric_mean, Error, HermitianMatrix, SandwichPair, Weight};
use rand::Rng;

fn within(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + 1e-9 * rhs.abs().max(1.0)
}

/// Every link of the chain behind the power-sandwich inner-product bound:
/// ⟨g(G)ξ,ξ⟩ ≤ M⟨g(MG)ξ,ξ⟩ ≤ M⟨g(X∇Y)ξ,ξ⟩ ≤ M⟨(g(X)♯g(Y))ξ,ξ⟩ ≤ M⟨g(X)ξ,ξ⟩^{1/p}⟨g(Y)ξ,ξ⟩^{1/q}
/// with X = A^p, Y = B^q, G = X ♯_{1/q} Y.
#[test]
fn power_sandwich_chain_links_hold_individually() {
    for dim in [2, 3, 5, 8] {
        for trial in 0..100 {
            let inputs = generate_inputs(
                InequalityCase::Thm2_5Scalar,
                dim,
                derive_seed(99, (dim * 1000 + trial) as u64),
                1e4,
            )
            .unwrap();
            let (a, b) = (inputs.a.as_ref().unwrap(), inputs.b.as_ref().unwrap());
            let w = inputs.weight.unwrap();
            let (p, q) = w.exponents().unwrap();
            let g = inputs.function.as_ref().unwrap();
            let xi = inputs.xi.as_ref().unwrap();
            let (s, t) = inputs.sandwich.unwrap();
            let m = kantorovich_bound(s, t, w.alpha()).unwrap();

            let x = a.pow(p).unwrap();
            let y = b.pow(q).unwrap();
            let mean = geometric_mean(&x, &y, w).unwrap();
            let qf = |h: &HermitianMatrix| quadratic_form(h, xi).unwrap();

            let l0 = qf(&apply(g, &mean).unwrap());
            let l1 = m * qf(&apply(g, &mean.scale(m)).unwrap());
            let l2 = m * qf(&apply(g, &arithmetic_mean(&x, &y, w).unwrap()).unwrap());
            let gx = apply(g, &x).unwrap();
            let gy = apply(g, &y).unwrap();
            let l3 = m * qf(&geometric_mean(&gx, &gy, w).unwrap());
            let l4 = m * qf(&gx).powf(1.0 / p) * qf(&gy).powf(1.0 / q);
            let links = [l0, l1, l2, l3, l4];
            for (k, pair) in links.windows(2).enumerate() {
                assert!(within(pair[0], pair[1]), "dim {dim} trial {trial} link {k}: {links:?}");
            }
        }
    }
}

/// Commuting `A`, `B` with spectra in `(0, 1)` and a unit `ξ`.
fn commuting_unit_inputs(dim: usize, seed: u64) -> CaseInputs {
    generate_inputs(InequalityCase::Cor2_6Half, dim, seed, 1e4).unwrap()
}

#[test]
fn commuting_unit_interval_lower_bracket() {
    for dim in [1, 2, 3, 5, 8] {
        for trial in 0..200 {
            let inputs = commuting_unit_inputs(dim, derive_seed(5, (dim * 1000 + trial) as u64));
            let r = check_case(InequalityCase::MoslehianE13, &inputs, 1e-9).unwrap();
            assert!(r.passed, "dim {dim} trial {trial}: {r:?}");
        }
    }
}

/// The reverse side of the bracket: 1 − ⟨ABξ,ξ⟩ ≤ K·(1 − ⟨A^pξ,ξ⟩)^{1/p}(1 − ⟨B^qξ,ξ⟩)^{1/q}.
/// This does not hold in general; see `reverse_bracket_scalar_counterexample`.
#[test]
fn commuting_unit_interval_upper_bracket() {
    let mut failures = Vec::new();
    for dim in [1, 2, 3, 5, 8] {
        for trial in 0..200 {
            let inputs = commuting_unit_inputs(dim, derive_seed(5, (dim * 1000 + trial) as u64));
            let r = check_case(InequalityCase::Cor2_6Half, &inputs, 1e-9).unwrap();
            if !r.passed {
                failures.push((dim, trial, r.relative_margin()));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "{} of 1000 trials violate the upper bracket, e.g. {:?}",
        failures.len(),
        &failures[..failures.len().min(3)]
    );
}

#[test]
fn reverse_bracket_scalar_counterexample() {
    // a² = 0.99, b² = 0.5, p = q = 2, computed by hand:
    // 1 − ab = 1 − √0.495 ≈ 0.296438, K(0.5/0.99)^{1/2} ≈ 1.058897,
    // √((1 − 0.99)(1 − 0.5)) ≈ 0.070711, product ≈ 0.074875.
    let a2: f64 = 0.99;
    let b2: f64 = 0.5;
    let lhs = 1.0 - (a2 * b2).sqrt();
    let ratio = b2 / a2;
    let k = ((ratio + 1.0).powi(2) / (4.0 * ratio)).sqrt();
    let rhs = k * ((1.0 - a2) * (1.0 - b2)).sqrt();
    assert!((lhs - 0.296438).abs() < 1e-6 && (rhs - 0.074875).abs() < 1e-6);

    let inputs = CaseInputs {
        a: Some(HermitianMatrix::diag(&[a2.sqrt()])),
        b: Some(HermitianMatrix::diag(&[b2.sqrt()])),
        weight: Some(Weight::new(0.5).unwrap()),
        xi: Some(real_vector(&[1.0])),
        ..Default::default()
    };
    let r = check_case(InequalityCase::Cor2_6Half, &inputs, 1e-9).unwrap();
    assert!(!r.passed);
    assert!((r.margin - (rhs - lhs)).abs() < 1e-12);
    assert!((r.constant_used - k).abs() < 1e-12);
}

#[test]
fn unit_interval_cases_refuse_t_above_one() {
    for case in [
        InequalityCase::Lemma3_4,
        InequalityCase::Prop3_5,
        InequalityCase::Thm3_6Op,
        InequalityCase::Thm3_6Scalar,
    ] {
        let mut inputs = generate_inputs(InequalityCase::Thm2_5Scalar, 3, 1, 1e4).unwrap();
        inputs.function = Some(by_id("RECIP").unwrap());
        if case == InequalityCase::Lemma3_4 || case == InequalityCase::Prop3_5 {
            let pair = random_sandwich_pair(3, 0.5, 2.0, 3).unwrap();
            inputs.a = Some(pair.a);
            inputs.b = Some(pair.b);
            inputs.sandwich = Some((0.5, 2.0));
        }
        let r = check_case(case, &inputs, 1e-9);
        assert!(matches!(r, Err(Error::RequirementsUnmet(_))), "{case}: {r:?}");
    }
}

#[test]
fn suite_is_independent_of_thread_count() {
    let config = SuiteConfig {
        dims: vec![2, 3],
        trials: 5,
        master_seed: 3,
        keep_records: true,
        ..Default::default()
    };
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| run_suite(&config)).unwrap();
    let b = four.install(|| run_suite(&config)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    assert_eq!(a.records.len(), 28 * 2 * 5);
}

#[test]
fn failures_carry_replayable_inputs() {
    let config = SuiteConfig {
        cases: vec![InequalityCase::Cor2_6Half],
        dims: vec![2],
        trials: 400,
        master_seed: 42,
        ..Default::default()
    };
    let report = run_suite(&config).unwrap();
    let failure = report.failures.first().expect("this configuration contains violations");
    let seed = failure.report.trial_seed.unwrap();
    assert!((0..400).any(|t| trial_seed(42, InequalityCase::Cor2_6Half, 2, t) == seed));
    // rebuild the operators from the dump and re-check
    let a: HermitianMatrix = serde_json::from_value(failure.inputs["a"].clone()).unwrap();
    let b: HermitianMatrix = serde_json::from_value(failure.inputs["b"].clone()).unwrap();
    let xi = &failure.inputs["xi"];
    let re: Vec<f64> = serde_json::from_value(xi["real"].clone()).unwrap();
    let im: Vec<f64> = serde_json::from_value(xi["imag"].clone()).unwrap();
    let xi =
        aczel_core::CVector::from_iterator(re.len(), re.iter().zip(&im).map(|(&r, &i)| aczel_core::C64::new(r, i)));
    let alpha = failure.inputs["alpha"].as_f64().unwrap();
    let replay = CaseInputs {
        a: Some(a),
        b: Some(b),
        weight: Some(Weight::new(alpha).unwrap()),
        xi: Some(xi),
        ..Default::default()
    };
    let r = check_case(InequalityCase::Cor2_6Half, &replay, 1e-9).unwrap();
    assert!(!r.passed);
    assert!((r.margin - failure.report.margin).abs() <= 1e-9 * failure.report.scale);
}

#[test]
fn tightness_ratio_is_attained_on_commuting_inputs() {
    // diagonal inputs reduce to scalars: r* = max_i g(√(a_i b_i)) / √(g(a_i) g(b_i))
    let g = by_id("SHIFTED_RECIP_1").unwrap();
    let mut rng = rng_from_seed(8);
    for _ in 0..50 {
        let a: Vec<f64> = (0..4).map(|_| rng.random_range(0.1..10.0)).collect();
        let b: Vec<f64> = (0..4).map(|_| rng.random_range(0.1..10.0)).collect();
        let (ha, hb) = (HermitianMatrix::diag(&a), HermitianMatrix::diag(&b));
        let (s, t) = tightest_sandwich(&ha, &hb).unwrap();
        let pair = SandwichPair { a: ha, b: hb, s, t };
        let r = tightness_table(&pair, 0.5, &g).unwrap();
        let want = a
            .iter()
            .zip(&b)
            .map(|(&x, &y)| g.eval((x * y).sqrt()) / (g.eval(x) * g.eval(y)).sqrt())
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((r.realized_ratio - want).abs() <= 1e-12 * want);
        assert!(r.dominated);
    }
}
