//! Catalog of non-negative operator monotone decreasing functions.
//!
//! Membership is by literature: `t ↦ 1/(t+c)` and `t ↦ t^{−r}` for
//! `0 < r ≤ 1` are operator monotone decreasing on `(0, ∞)`; `t ↦ 1 − t`
//! is operator monotone decreasing and operator concave on `(0, 1)`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{loewner_margin, HermitianMatrix, Interval, LoewnerMargin};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    OneMinusT,
    Recip,
    ShiftedRecip(f64),
    NegPower(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecreasingFunction {
    id: String,
    domain: Interval,
    operator_concave: bool,
    shape: Shape,
}

impl DecreasingFunction {
    fn new(id: String, shape: Shape) -> Self {
        let (domain, operator_concave) = match shape {
            Shape::OneMinusT => (Interval { lo: 0.0, hi: 1.0 }, true),
            _ => (Interval::POSITIVE, false),
        };
        DecreasingFunction {
            id,
            domain,
            operator_concave,
            shape,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn operator_concave(&self) -> bool {
        self.operator_concave
    }

    /// Defined on the whole positive half-line, as the reverse inequalities require.
    pub fn on_positive_axis(&self) -> bool {
        self.domain == Interval::POSITIVE
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.shape {
            Shape::OneMinusT => 1.0 - x,
            Shape::Recip => 1.0 / x,
            Shape::ShiftedRecip(c) => 1.0 / (x + c),
            Shape::NegPower(r) => x.powf(-r),
        }
    }
}

impl fmt::Display for DecreasingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

impl Serialize for DecreasingFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            id: &'a str,
            formula: String,
            domain_lo: f64,
            domain_hi: Option<f64>,
            operator_concave: bool,
        }
        let formula = match self.shape {
            Shape::OneMinusT => "1 - t".to_string(),
            Shape::Recip => "1 / t".to_string(),
            Shape::ShiftedRecip(c) => format!("1 / (t + {c})"),
            Shape::NegPower(r) => format!("t^(-{r})"),
        };
        Entry {
            id: &self.id,
            formula,
            domain_lo: self.domain.lo,
            domain_hi: self.domain.hi.is_finite().then_some(self.domain.hi),
            operator_concave: self.operator_concave,
        }
        .serialize(serializer)
    }
}

pub fn catalog() -> Vec<DecreasingFunction> {
    let mut out = vec![
        DecreasingFunction::new("ONE_MINUS_T".into(), Shape::OneMinusT),
        DecreasingFunction::new("RECIP".into(), Shape::Recip),
    ];
    for c in [0.5, 1.0] {
        out.push(DecreasingFunction::new(
            format!("SHIFTED_RECIP_{c}"),
            Shape::ShiftedRecip(c),
        ));
    }
    for r in [0.25, 0.5, 0.75, 1.0] {
        out.push(DecreasingFunction::new(format!("NEG_POWER_{r}"), Shape::NegPower(r)));
    }
    out
}

pub fn by_id(id: &str) -> Result<DecreasingFunction> {
    catalog()
        .into_iter()
        .find(|g| g.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| {
            let known: Vec<String> = catalog().into_iter().map(|g| g.id).collect();
            Error::invalid(format!("unknown function {id:?}; known: {}", known.join(", ")))
        })
}

/// `g(A)` by functional calculus.
pub fn apply(g: &DecreasingFunction, a: &HermitianMatrix) -> Result<HermitianMatrix> {
    a.apply_fn(|x| g.eval(x), g.domain)
}

/// Margin of `(1/λ) g(A) ≤ g(λA)`.
pub fn check_scaling_lemma(
    g: &DecreasingFunction,
    a: &HermitianMatrix,
    lambda: f64,
    tol: f64,
) -> Result<LoewnerMargin> {
    if !(lambda >= 1.0) || !lambda.is_finite() {
        return Err(Error::invalid(format!("λ must be finite and ≥ 1, got {lambda}")));
    }
    let lower = apply(g, a)?.scale(1.0 / lambda);
    let upper = apply(g, &a.scale(lambda))?;
    loewner_margin(&lower, &upper, tol)
}
