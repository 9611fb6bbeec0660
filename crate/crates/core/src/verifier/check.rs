use serde::{Deserialize, Serialize};

use super::cases::{FunctionNeed, InequalityCase, Operands, Requirements, VectorNeed};
use crate::constants::{kantorovich_bound, kantorovich_bound_from_bounds, BoundFamily, BoundKind};
use crate::error::{Error, Result};
use crate::functions::{self, check_scaling_lemma, DecreasingFunction};
use crate::linalg::{loewner_margin, quadratic_form, CVector, HermitianMatrix, Interval, C64};
use crate::means::{arithmetic_mean, geometric_mean, Weight};
use crate::sampler::{tightest_sandwich, AczelSequences};

/// Relative slack when validating certified sandwich constants and spectral bounds.
pub const REQUIREMENT_TOL: f64 = 1e-9;

/// Relative commutator size accepted for "commuting" pairs.
pub const COMMUTATOR_TOL: f64 = 1e-10;

/// `m ≤ m′ ≤ M′ ≤ M` separating the spectra of the two operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralBounds {
    pub m: f64,
    pub m_inner: f64,
    pub big_inner: f64,
    pub big: f64,
}

/// Everything a case may consume. Which fields are needed is given by
/// [`InequalityCase::requirements`].
#[derive(Debug, Clone, Default)]
pub struct CaseInputs {
    pub a: Option<HermitianMatrix>,
    pub b: Option<HermitianMatrix>,
    pub weight: Option<Weight>,
    /// Certified `(s, t)`; for the power cases it constrains `(A^p, B^q)`.
    pub sandwich: Option<(f64, f64)>,
    pub spectral_bounds: Option<SpectralBounds>,
    pub lambda: Option<f64>,
    pub xi: Option<CVector>,
    pub function: Option<DecreasingFunction>,
    pub sequences: Option<AczelSequences>,
    /// `(a, b)` of the inner-product Aczél variant.
    pub reals: Option<(f64, f64)>,
    /// `(x, y)` of the inner-product Aczél variant.
    pub vectors: Option<(CVector, CVector)>,
}

fn missing(what: &str) -> Error {
    Error::unmet(format!("missing {what}"))
}

impl CaseInputs {
    fn a(&self) -> Result<&HermitianMatrix> {
        self.a.as_ref().ok_or_else(|| missing("operator A"))
    }

    fn b(&self) -> Result<&HermitianMatrix> {
        self.b.as_ref().ok_or_else(|| missing("operator B"))
    }

    fn weight(&self) -> Result<Weight> {
        self.weight.ok_or_else(|| missing("weight"))
    }

    fn xi(&self) -> Result<&CVector> {
        self.xi.as_ref().ok_or_else(|| missing("vector ξ"))
    }

    fn function(&self) -> Result<&DecreasingFunction> {
        self.function.as_ref().ok_or_else(|| missing("function g"))
    }

    fn sequences(&self) -> Result<&AczelSequences> {
        self.sequences.as_ref().ok_or_else(|| missing("sequences"))
    }

    pub fn dim(&self) -> usize {
        self.a
            .as_ref()
            .map(HermitianMatrix::dim)
            .or_else(|| self.sequences.as_ref().map(|s| s.a.len()))
            .or_else(|| self.vectors.as_ref().map(|(x, _)| x.len()))
            .unwrap_or(0)
    }

    /// Serializable snapshot, for replaying a trial.
    pub fn to_json(&self) -> serde_json::Value {
        let vector = |v: &CVector| {
            serde_json::json!({
                "real": v.iter().map(|z| z.re).collect::<Vec<_>>(),
                "imag": v.iter().map(|z| z.im).collect::<Vec<_>>(),
            })
        };
        let mut doc = serde_json::Map::new();
        let mut put = |k: &str, v: serde_json::Value| {
            doc.insert(k.to_string(), v);
        };
        if let Some(a) = &self.a {
            put("a", serde_json::to_value(a).expect("serializable"));
        }
        if let Some(b) = &self.b {
            put("b", serde_json::to_value(b).expect("serializable"));
        }
        if let Some(w) = self.weight {
            put("alpha", w.alpha().into());
        }
        if let Some((s, t)) = self.sandwich {
            put("s", s.into());
            put("t", t.into());
        }
        if let Some(sb) = self.spectral_bounds {
            put("spectral_bounds", serde_json::to_value(sb).expect("serializable"));
        }
        if let Some(l) = self.lambda {
            put("lambda", l.into());
        }
        if let Some(xi) = &self.xi {
            put("xi", vector(xi));
        }
        if let Some(g) = &self.function {
            put("function", g.id().into());
        }
        if let Some(seq) = &self.sequences {
            put("sequences", serde_json::to_value(seq).expect("serializable"));
        }
        if let Some((a, b)) = self.reals {
            put("reals", serde_json::json!([a, b]));
        }
        if let Some((x, y)) = &self.vectors {
            put("vectors", serde_json::json!([vector(x), vector(y)]));
        }
        serde_json::Value::Object(doc)
    }
}

/// Parameters recorded alongside a verdict.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CaseContext {
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// The function does not satisfy the case's hypothesis on `g`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub outside_hypotheses: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case_id: InequalityCase,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial_seed: Option<u64>,
    /// Löwner min-eigenvalue of `RHS − LHS` for operator cases, `RHS − LHS` otherwise.
    pub margin: f64,
    /// `max(1, ‖LHS‖, ‖RHS‖)` for operator cases, `max(1, |RHS|)` otherwise.
    pub scale: f64,
    pub constant_used: f64,
    pub passed: bool,
    pub context: CaseContext,
}

impl VerificationReport {
    pub fn relative_margin(&self) -> f64 {
        self.margin / self.scale
    }
}

#[allow(clippy::large_enum_variant)]
enum Sides {
    Operator {
        lower: HermitianMatrix,
        upper: HermitianMatrix,
    },
    Scalar {
        lhs: f64,
        rhs: f64,
    },
    /// Margin already computed elsewhere.
    Margin {
        margin: f64,
        scale: f64,
    },
}

struct Evaluation {
    sides: Sides,
    constant: f64,
}

/// Evaluates one inequality on the given inputs.
///
/// Inputs that do not match the case's hypotheses produce
/// `Error::RequirementsUnmet`; a violated inequality is a report with
/// `passed == false`.
pub fn check_case(case: InequalityCase, inputs: &CaseInputs, tol: f64) -> Result<VerificationReport> {
    if !(tol >= 0.0) {
        return Err(Error::invalid(format!("tolerance must be non-negative, got {tol}")));
    }
    let req = case.requirements();
    let mut ctx = CaseContext {
        dim: inputs.dim(),
        ..Default::default()
    };
    validate_common(&req, inputs, &mut ctx)?;
    let eval = evaluate(case, &req, inputs, &mut ctx).map_err(|e| match e {
        Error::SpectrumOutsideDomain { .. } => Error::unmet(e.to_string()),
        e => e,
    })?;

    let (margin, scale) = if !eval.constant.is_finite() {
        // an infinite reverse constant makes the inequality vacuous
        (f64::INFINITY, 1.0)
    } else {
        match eval.sides {
            Sides::Operator { lower, upper } => {
                let m = loewner_margin(&lower, &upper, tol)?;
                (m.min_eigenvalue, m.relative_scale)
            }
            Sides::Scalar { lhs, rhs } => (rhs - lhs, rhs.abs().max(1.0)),
            Sides::Margin { margin, scale } => (margin, scale),
        }
    };
    Ok(VerificationReport {
        case_id: case,
        trial_seed: None,
        margin,
        scale,
        constant_used: eval.constant,
        passed: margin >= -tol * scale,
        context: ctx,
    })
}

fn validate_common(req: &Requirements, inputs: &CaseInputs, ctx: &mut CaseContext) -> Result<()> {
    if req.operands != Operands::Sequences && req.operands != Operands::InnerProduct {
        let a = inputs.a()?;
        if req.operands != Operands::Single && inputs.b()?.dim() != a.dim() {
            return Err(Error::DimensionMismatch {
                left: a.dim(),
                right: inputs.b()?.dim(),
            });
        }
    }
    if !matches!(
        req.operands,
        Operands::Single | Operands::Sequences | Operands::InnerProduct
    ) {
        let w = inputs.weight()?;
        ctx.alpha = Some(w.alpha());
        if req.exponents {
            ctx.p = Some(w.exponents()?.0);
        }
    }
    match req.function {
        FunctionNeed::None => {}
        FunctionNeed::PositiveAxis => {
            // A function living on a bounded interval is still evaluated when
            // every argument lands in its domain, but the verdict is flagged:
            // the inequality is only claimed for functions on (0, ∞).
            let g = inputs.function()?;
            ctx.outside_hypotheses = !g.on_positive_axis();
            ctx.function_id = Some(g.id().to_string());
        }
        FunctionNeed::OperatorConcave => {
            let g = inputs.function()?;
            if !g.operator_concave() {
                return Err(Error::unmet(format!("{} is not flagged operator concave", g.id())));
            }
            ctx.function_id = Some(g.id().to_string());
        }
    }
    match req.vector {
        VectorNeed::None => {}
        VectorNeed::Any => {
            if inputs.xi()?.len() != inputs.dim() {
                return Err(Error::DimensionMismatch {
                    left: inputs.dim(),
                    right: inputs.xi()?.len(),
                });
            }
        }
        VectorNeed::Unit => {
            let xi = inputs.xi()?;
            if xi.len() != inputs.dim() {
                return Err(Error::DimensionMismatch {
                    left: inputs.dim(),
                    right: xi.len(),
                });
            }
            if (xi.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::unmet(format!("ξ must be a unit vector, ‖ξ‖ = {}", xi.norm())));
            }
        }
    }
    Ok(())
}

/// Validates or derives `(s, t)` for `sX ≤ Y ≤ tX`.
fn sandwich_constants(
    req: &Requirements,
    inputs: &CaseInputs,
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    ctx: &mut CaseContext,
) -> Result<(f64, f64)> {
    let (lo, hi) = tightest_sandwich(x, y)?;
    let (s, t) = match inputs.sandwich {
        Some((s, t)) => {
            if !(s > 0.0 && s <= t) {
                return Err(Error::unmet(format!("invalid sandwich constants s = {s}, t = {t}")));
            }
            if lo < s * (1.0 - REQUIREMENT_TOL) || hi > t * (1.0 + REQUIREMENT_TOL) {
                return Err(Error::unmet(format!(
                    "sandwich {s}·X ≤ Y ≤ {t}·X does not hold (tightest constants {lo}, {hi})"
                )));
            }
            (s, t)
        }
        None => (lo, hi),
    };
    if let Some(max_t) = req.max_t {
        if t > max_t {
            return Err(Error::unmet(format!("this case needs t ≤ {max_t}, got t = {t}")));
        }
    }
    ctx.s = Some(s);
    ctx.t = Some(t);
    Ok((s, t))
}

fn bound_constant(kind: BoundKind, s: f64, t: f64, alpha: f64) -> Result<f64> {
    BoundFamily::new(kind, s, t, alpha).evaluate()
}

fn check_spectrum_in(m: &HermitianMatrix, domain: Interval, what: &str) -> Result<()> {
    let spectral = m.spectral()?;
    if !(domain.contains(spectral.min()) && domain.contains(spectral.max())) {
        return Err(Error::unmet(format!(
            "spectrum of {what} [{}, {}] must lie in {domain}",
            spectral.min(),
            spectral.max()
        )));
    }
    Ok(())
}

fn check_commuting(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<()> {
    let c = a.commutator_norm(b)?;
    let bound = COMMUTATOR_TOL * a.frobenius_norm() * b.frobenius_norm();
    if c > bound {
        return Err(Error::unmet(format!("operators do not commute (‖AB − BA‖_F = {c:e})")));
    }
    Ok(())
}

fn commuting_product(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<HermitianMatrix> {
    HermitianMatrix::new(a.product(b)?)
}

fn within_interval(x: f64, lo: f64, hi: f64) -> bool {
    x >= lo * (1.0 - REQUIREMENT_TOL) && x <= hi * (1.0 + REQUIREMENT_TOL)
}

fn evaluate(
    case: InequalityCase,
    req: &Requirements,
    inputs: &CaseInputs,
    ctx: &mut CaseContext,
) -> Result<Evaluation> {
    use InequalityCase::*;

    match req.operands {
        Operands::Sequences => return evaluate_sequences(case, inputs, ctx),
        Operands::InnerProduct => return evaluate_inner_product(inputs),
        _ => {}
    }
    let a = inputs.a()?;

    if case == Lemma2_3 {
        let g = inputs.function()?;
        let lambda = inputs.lambda.ok_or_else(|| missing("scale λ"))?;
        ctx.lambda = Some(lambda);
        let m = check_scaling_lemma(g, a, lambda, 0.0)?;
        return Ok(Evaluation {
            sides: Sides::Margin {
                margin: m.min_eigenvalue,
                scale: m.relative_scale,
            },
            constant: lambda,
        });
    }

    let b = inputs.b()?;
    let w = inputs.weight()?;
    let alpha = w.alpha();

    match req.operands {
        Operands::Pair => {
            for (m, name) in [(a, "A"), (b, "B")] {
                check_spectrum_in(m, Interval::POSITIVE, name)?;
            }
            let sides = match case {
                Young => Sides::Operator {
                    lower: geometric_mean(a, b, w)?,
                    upper: arithmetic_mean(a, b, w)?,
                },
                LogconvTf => {
                    let g = inputs.function()?;
                    Sides::Operator {
                        lower: functions::apply(g, &arithmetic_mean(a, b, w)?)?,
                        upper: geometric_mean(&functions::apply(g, a)?, &functions::apply(g, b)?, w)?,
                    }
                }
                InnerprodGm => {
                    let xi = inputs.xi()?;
                    let lhs = quadratic_form(&geometric_mean(a, b, w)?, xi)?;
                    let rhs = quadratic_form(a, xi)?.powf(1.0 - alpha) * quadratic_form(b, xi)?.powf(alpha);
                    Sides::Scalar { lhs, rhs }
                }
                _ => unreachable!("{case} does not take a plain pair"),
            };
            Ok(Evaluation { sides, constant: 1.0 })
        }
        Operands::SeparatedSpectra => {
            let sb = inputs.spectral_bounds.ok_or_else(|| missing("spectral bounds"))?;
            let (ea, eb) = (a.spectral()?, b.spectral()?);
            let inside = |s: &crate::linalg::Spectral, lo: f64, hi: f64| {
                within_interval(s.min(), lo, hi) && within_interval(s.max(), lo, hi)
            };
            let ordered = inside(ea, sb.m, sb.m_inner) && inside(eb, sb.big_inner, sb.big);
            let swapped = inside(eb, sb.m, sb.m_inner) && inside(ea, sb.big_inner, sb.big);
            if !(ordered || swapped) {
                return Err(Error::unmet("spectra are not separated by the given bounds"));
            }
            let c = kantorovich_bound_from_bounds(sb.m, sb.m_inner, sb.big_inner, sb.big, alpha)?;
            ctx.s = Some(sb.m / sb.big);
            ctx.t = Some(sb.big / sb.m);
            Ok(Evaluation {
                sides: Sides::Operator {
                    lower: arithmetic_mean(a, b, w)?,
                    upper: geometric_mean(a, b, w)?.scale(c),
                },
                constant: c,
            })
        }
        Operands::Sandwich => {
            let (s, t) = sandwich_constants(req, inputs, a, b, ctx)?;
            let kind = req.bound.expect("sandwich cases carry a bound");
            let c = bound_constant(kind, s, t, alpha)?;
            let sides = match req.function {
                FunctionNeed::None => Sides::Operator {
                    lower: arithmetic_mean(a, b, w)?,
                    upper: geometric_mean(a, b, w)?.scale(c),
                },
                _ => {
                    let g = inputs.function()?;
                    Sides::Operator {
                        lower: functions::apply(g, &geometric_mean(a, b, w)?)?,
                        upper: geometric_mean(&functions::apply(g, a)?, &functions::apply(g, b)?, w)?.scale(c),
                    }
                }
            };
            Ok(Evaluation { sides, constant: c })
        }
        Operands::PowerSandwich => {
            let (p, q) = w.exponents()?;
            let x = a.pow(p)?;
            let y = b.pow(q)?;
            let (s, t) = sandwich_constants(req, inputs, &x, &y, ctx)?;
            let kind = req.bound.expect("power cases carry a bound");
            let c = bound_constant(kind, s, t, alpha)?;
            let g = inputs.function()?;
            let g_mean = functions::apply(g, &geometric_mean(&x, &y, w)?)?;
            let gx = functions::apply(g, &x)?;
            let gy = functions::apply(g, &y)?;
            let sides = match req.vector {
                VectorNeed::None => Sides::Operator {
                    lower: g_mean,
                    upper: geometric_mean(&gx, &gy, w)?.scale(c),
                },
                _ => {
                    let xi = inputs.xi()?;
                    Sides::Scalar {
                        lhs: quadratic_form(&g_mean, xi)?,
                        rhs: c * quadratic_form(&gx, xi)?.powf(1.0 / p) * quadratic_form(&gy, xi)?.powf(1.0 / q),
                    }
                }
            };
            Ok(Evaluation { sides, constant: c })
        }
        Operands::UnitIntervalPowers => {
            let (p, q) = w.exponents()?;
            let g = inputs.function()?;
            let x = a.pow(p)?;
            let y = b.pow(q)?;
            let g_mean = functions::apply(g, &geometric_mean(&x, &y, w)?)?;
            let gx = functions::apply(g, &x)?;
            let gy = functions::apply(g, &y)?;
            let sides = match case {
                MoslehianE9 => Sides::Operator {
                    lower: geometric_mean(&gx, &gy, w)?,
                    upper: g_mean,
                },
                MoslehianE10 => {
                    let xi = inputs.xi()?;
                    Sides::Scalar {
                        lhs: quadratic_form(&gx, xi)?.powf(1.0 / p) * quadratic_form(&gy, xi)?.powf(1.0 / q),
                        rhs: quadratic_form(&g_mean, xi)?,
                    }
                }
                _ => unreachable!("{case} does not take unit-interval powers"),
            };
            Ok(Evaluation { sides, constant: 1.0 })
        }
        Operands::CommutingUnitInterval => {
            check_commuting(a, b)?;
            let unit = Interval { lo: 0.0, hi: 1.0 };
            check_spectrum_in(a, unit, "A")?;
            check_spectrum_in(b, unit, "B")?;
            let (p, q) = w.exponents()?;
            let xi = inputs.xi()?;
            let x = a.pow(p)?;
            let y = b.pow(q)?;
            let ab = commuting_product(a, b)?;
            match case {
                Cor2_6Half | MoslehianE13 => {
                    // ‖T^{1/2} ξ‖² = ⟨T ξ, ξ⟩
                    let product =
                        (1.0 - quadratic_form(&x, xi)?).powf(1.0 / p) * (1.0 - quadratic_form(&y, xi)?).powf(1.0 / q);
                    let gap = 1.0 - quadratic_form(&ab, xi)?;
                    if case == MoslehianE13 {
                        return Ok(Evaluation {
                            sides: Sides::Scalar { lhs: product, rhs: gap },
                            constant: 1.0,
                        });
                    }
                    let (s, t) = sandwich_constants(req, inputs, &x, &y, ctx)?;
                    let c = kantorovich_bound(s, t, alpha)?;
                    Ok(Evaluation {
                        sides: Sides::Scalar {
                            lhs: gap,
                            rhs: c * product,
                        },
                        constant: c,
                    })
                }
                Cor2_6Full => {
                    let (s, t) = sandwich_constants(req, inputs, &x, &y, ctx)?;
                    // commuting: sX ≤ Y ≤ tX implies s²X² ≤ Y² ≤ t²X²
                    let c = kantorovich_bound(s * s, t * t, alpha)?;
                    let sq = |v: CVector| v.norm_squared();
                    let lhs = 1.0 - sq(ab.entries() * xi);
                    let rhs =
                        c * (1.0 - sq(x.entries() * xi)).powf(1.0 / p) * (1.0 - sq(y.entries() * xi)).powf(1.0 / q);
                    Ok(Evaluation {
                        sides: Sides::Scalar { lhs, rhs },
                        constant: c,
                    })
                }
                _ => unreachable!("{case} does not take a commuting unit-interval pair"),
            }
        }
        Operands::CommutingPositive => {
            check_commuting(a, b)?;
            let (p, q) = w.exponents()?;
            let g = inputs.function()?;
            let x = a.pow(p)?;
            let y = b.pow(q)?;
            let (s, t) = sandwich_constants(req, inputs, &x, &y, ctx)?;
            let c = kantorovich_bound(s, t, alpha)?;
            let lower = functions::apply(g, &commuting_product(a, b)?)?;
            let gx = functions::apply(g, &x)?.pow(1.0 / p)?;
            let gy = functions::apply(g, &y)?.pow(1.0 / q)?;
            Ok(Evaluation {
                sides: Sides::Operator {
                    lower,
                    upper: commuting_product(&gx, &gy)?.scale(c),
                },
                constant: c,
            })
        }
        Operands::Single | Operands::Sequences | Operands::InnerProduct => {
            unreachable!("handled above")
        }
    }
}

fn evaluate_sequences(case: InequalityCase, inputs: &CaseInputs, ctx: &mut CaseContext) -> Result<Evaluation> {
    use InequalityCase::*;
    let seq = inputs.sequences()?;
    let (a, b, p, q) = (&seq.a, &seq.b, seq.p, seq.q);
    ctx.p = Some(p);
    ctx.alpha = Some(1.0 / q);
    let cross = a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<f64>();
    let sides = match case {
        AczelClassic => {
            let ga = AczelSequences::lorentz_gap(a, 2.0);
            let gb = AczelSequences::lorentz_gap(b, 2.0);
            if !(ga > 0.0 || gb > 0.0) {
                return Err(Error::unmet("need a₁² > Σ a_i² or b₁² > Σ b_i²"));
            }
            Sides::Scalar {
                lhs: ga * gb,
                rhs: cross * cross,
            }
        }
        Popoviciu => {
            if !seq.dominant() {
                return Err(Error::unmet("need a₁^p > Σ a_i^p and b₁^q > Σ b_i^q"));
            }
            Sides::Scalar {
                lhs: AczelSequences::lorentz_gap(a, p).powf(1.0 / p) * AczelSequences::lorentz_gap(b, q).powf(1.0 / q),
                rhs: cross,
            }
        }
        Cor2_8 => {
            let g = inputs.function()?;
            let ratios: Vec<f64> = a.iter().zip(b).map(|(x, y)| y.powf(q) / x.powf(p)).collect();
            let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let (s, t) = match inputs.sandwich {
                Some((s, t)) => {
                    if !(within_interval(lo, s, t) && within_interval(hi, s, t)) {
                        return Err(Error::unmet(format!(
                            "ratios b_i^q / a_i^p span [{lo}, {hi}], outside [{s}, {t}]"
                        )));
                    }
                    (s, t)
                }
                None => (lo, hi),
            };
            ctx.s = Some(s);
            ctx.t = Some(t);
            let c = kantorovich_bound(s, t, 1.0 / q)?;
            let lhs: f64 = a.iter().zip(b).map(|(x, y)| g.eval(x * y)).sum();
            let sa: f64 = a.iter().map(|x| g.eval(x.powf(p))).sum();
            let sb: f64 = b.iter().map(|y| g.eval(y.powf(q))).sum();
            return Ok(Evaluation {
                sides: Sides::Scalar {
                    lhs,
                    rhs: c * sa.powf(1.0 / p) * sb.powf(1.0 / q),
                },
                constant: c,
            });
        }
        _ => unreachable!("{case} does not take sequences"),
    };
    Ok(Evaluation { sides, constant: 1.0 })
}

fn evaluate_inner_product(inputs: &CaseInputs) -> Result<Evaluation> {
    let (a, b) = inputs.reals.ok_or_else(|| missing("reals a, b"))?;
    let (x, y) = inputs.vectors.as_ref().ok_or_else(|| missing("vectors x, y"))?;
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let ga = a * a - x.norm_squared();
    let gb = b * b - y.norm_squared();
    if !(ga > 0.0 || gb > 0.0) {
        return Err(Error::unmet("need a² > ‖x‖² or b² > ‖y‖²"));
    }
    let inner: C64 = y.dotc(x);
    let cross = a * b - inner.re;
    Ok(Evaluation {
        sides: Sides::Scalar {
            lhs: ga * gb,
            rhs: cross * cross,
        },
        constant: 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::by_id;
    use crate::linalg::real_vector;
    use approx::assert_abs_diff_eq;
    use InequalityCase::*;

    fn pair_inputs(a: HermitianMatrix, b: HermitianMatrix, alpha: f64) -> CaseInputs {
        CaseInputs {
            a: Some(a),
            b: Some(b),
            weight: Some(Weight::new(alpha).unwrap()),
            ..Default::default()
        }
    }

    #[test]
    fn young_equality_at_b_equals_a() {
        let a = HermitianMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let r = check_case(Young, &pair_inputs(a.clone(), a, 0.4), 1e-9).unwrap();
        assert!(r.margin.abs() <= 1e-12, "{}", r.margin);
        assert!(r.passed);
    }

    #[test]
    fn lemma_2_2_equality_at_unit_sandwich() {
        let a = HermitianMatrix::from_rows(&[&[3.0, 1.0], &[1.0, 2.0]]).unwrap();
        let mut inputs = pair_inputs(a.clone(), a, 0.7);
        inputs.sandwich = Some((1.0, 1.0));
        let r = check_case(Lemma2_2, &inputs, 1e-9).unwrap();
        assert_eq!(r.constant_used, 1.0);
        assert!(r.margin.abs() <= 1e-12);
    }

    #[test]
    fn prop_2_4_commuting_closed_form() {
        // shared eigenbasis: everything reduces to scalars per diagonal entry
        let g = by_id("ONE_MINUS_T").unwrap();
        let a = HermitianMatrix::diag(&[0.2, 0.4]);
        let b = HermitianMatrix::diag(&[0.4, 0.2]);
        let (s, t) = tightest_sandwich(&a, &b).unwrap();
        assert_abs_diff_eq!(s, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(t, 2.0, epsilon = 1e-15);
        let c = kantorovich_bound(s, t, 0.5).unwrap();
        let scalar_lhs = 1.0 - (0.2f64 * 0.4).sqrt();
        let scalar_rhs = c * (0.8f64 * 0.6).sqrt();
        let mut inputs = pair_inputs(a.clone(), b.clone(), 0.5);
        inputs.function = Some(g.clone());
        inputs.sandwich = Some((s, t));
        let r = check_case(Prop2_4, &inputs, 1e-9).unwrap();
        assert!(r.passed);
        assert!(r.context.outside_hypotheses);
        assert_abs_diff_eq!(r.margin, scalar_rhs - scalar_lhs, epsilon = 1e-13);
        assert_abs_diff_eq!(r.constant_used, c, epsilon = 1e-15);
        let lhs = functions::apply(&g, &geometric_mean(&a, &b, Weight::new(0.5).unwrap()).unwrap()).unwrap();
        let rhs = geometric_mean(
            &functions::apply(&g, &a).unwrap(),
            &functions::apply(&g, &b).unwrap(),
            Weight::new(0.5).unwrap(),
        )
        .unwrap()
        .scale(c);
        for i in 0..2 {
            assert_abs_diff_eq!(lhs.entries()[(i, i)].re, scalar_lhs, epsilon = 1e-14);
            assert_abs_diff_eq!(rhs.entries()[(i, i)].re, scalar_rhs, epsilon = 1e-14);
        }
        assert!(scalar_rhs - scalar_lhs >= 0.0);
    }

    #[test]
    fn fm_case_rejects_t_above_one() {
        let a = HermitianMatrix::identity(2);
        let b = HermitianMatrix::diag(&[0.5, 2.0]);
        let mut inputs = pair_inputs(a, b, 0.5);
        inputs.sandwich = Some((0.5, 2.0));
        let err = check_case(Lemma3_4, &inputs, 1e-9).unwrap_err();
        assert!(matches!(err, Error::RequirementsUnmet(_)));
    }

    #[test]
    fn wrong_sandwich_is_unmet_not_failed() {
        let a = HermitianMatrix::identity(2);
        let b = HermitianMatrix::diag(&[0.5, 2.0]);
        let mut inputs = pair_inputs(a, b, 0.5);
        inputs.sandwich = Some((0.6, 2.0));
        assert!(matches!(
            check_case(Lemma2_2, &inputs, 1e-9),
            Err(Error::RequirementsUnmet(_))
        ));
    }

    #[test]
    fn missing_inputs_are_unmet() {
        let a = HermitianMatrix::identity(2);
        let inputs = pair_inputs(a.clone(), a, 0.5);
        assert!(matches!(
            check_case(Prop2_4, &inputs, 1e-9),
            Err(Error::RequirementsUnmet(_))
        ));
        assert!(matches!(
            check_case(AczelClassic, &CaseInputs::default(), 1e-9),
            Err(Error::RequirementsUnmet(_))
        ));
    }

    #[test]
    fn corollary_2_6_counterexample() {
        // a² = 0.99, b² = 0.5, p = q = 2, dim 1: 1 − ab ≈ 0.2964 while the
        // bound gives ≈ 0.0749.
        let inputs = CaseInputs {
            a: Some(HermitianMatrix::diag(&[0.99f64.sqrt()])),
            b: Some(HermitianMatrix::diag(&[0.5f64.sqrt()])),
            weight: Some(Weight::new(0.5).unwrap()),
            xi: Some(real_vector(&[1.0])),
            ..Default::default()
        };
        let r = check_case(Cor2_6Half, &inputs, 1e-9).unwrap();
        assert!(!r.passed);
        assert_abs_diff_eq!(r.margin, 0.074875 - 0.296438, epsilon = 1e-5);
        // the forward inequality holds on the same input
        assert!(check_case(MoslehianE13, &inputs, 1e-9).unwrap().passed);
    }

    #[test]
    fn dragomir_and_aczel_hand_examples() {
        let inputs = CaseInputs {
            reals: Some((2.0, 1.0)),
            vectors: Some((real_vector(&[1.0, 0.0]), real_vector(&[0.0, 3.0]))),
            ..Default::default()
        };
        // one side negative: (4 − 1)(1 − 9) = −24 ≤ (2)² = 4
        let r = check_case(DragomirE14, &inputs, 1e-9).unwrap();
        assert_eq!(r.margin, 28.0);

        let seq = AczelSequences::new(vec![2.0, 1.0], vec![2.0, 1.0], 2.0).unwrap();
        let inputs = CaseInputs {
            sequences: Some(seq),
            ..Default::default()
        };
        // (4 − 1)(4 − 1) = 9 ≤ (4 − 1)² = 9
        let r = check_case(AczelClassic, &inputs, 1e-9).unwrap();
        assert_eq!(r.margin, 0.0);
        let r = check_case(Popoviciu, &inputs, 1e-9).unwrap();
        assert_abs_diff_eq!(r.margin, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn scaling_lemma_case_flags_unit_interval_function() {
        let inputs = CaseInputs {
            a: Some(HermitianMatrix::diag(&[0.45])),
            lambda: Some(2.0),
            function: Some(by_id("ONE_MINUS_T").unwrap()),
            ..Default::default()
        };
        let r = check_case(Lemma2_3, &inputs, 1e-9).unwrap();
        assert!(!r.passed && r.context.outside_hypotheses);
        let inputs = CaseInputs {
            a: Some(HermitianMatrix::diag(&[0.7])),
            ..inputs
        };
        // λA leaves (0, 1)
        assert!(matches!(
            check_case(Lemma2_3, &inputs, 1e-9),
            Err(Error::RequirementsUnmet(_))
        ));
        let inputs = CaseInputs {
            function: Some(by_id("SHIFTED_RECIP_1").unwrap()),
            a: Some(HermitianMatrix::diag(&[1.0])),
            lambda: Some(2.0),
            ..Default::default()
        };
        let r = check_case(Lemma2_3, &inputs, 1e-9).unwrap();
        assert_abs_diff_eq!(r.margin, 1.0 / 12.0, epsilon = 1e-15);
    }
}
