use serde::{Deserialize, Serialize};

use super::check::REQUIREMENT_TOL;
use crate::constants::{BoundFamily, BoundKind};
use crate::error::{Error, Result};
use crate::functions::{self, DecreasingFunction};
use crate::means::{geometric_mean, Weight};
use crate::sampler::{tightest_sandwich, SandwichPair};

/// Slack allowed when comparing the realized ratio against a constant.
pub const DOMINANCE_TOL: f64 = 1e-9;

/// The four reverse constants next to the realized ratio for one input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessRecord {
    pub s: f64,
    pub t: f64,
    pub alpha: f64,
    pub function_id: String,
    pub kantorovich: f64,
    pub dragomir: f64,
    /// `None` when `t > 1`.
    pub fm: Option<f64>,
    pub specht: f64,
    /// Smallest `c` with `g(A ♯_α B) ≤ c·(g(A) ♯_α g(B))`.
    pub realized_ratio: f64,
    pub tightest: BoundKind,
    /// `r*` is within [`DOMINANCE_TOL`] of every applicable constant.
    pub dominated: bool,
}

impl TightnessRecord {
    pub fn constant(&self, kind: BoundKind) -> Option<f64> {
        match kind {
            BoundKind::KantorovichPower => Some(self.kantorovich),
            BoundKind::DragomirExp => Some(self.dragomir),
            BoundKind::FmMalpha => self.fm,
            BoundKind::Specht => Some(self.specht),
        }
    }

    /// Applicable constants in [`BoundKind::ALL`] order.
    pub fn applicable(&self) -> Vec<(BoundKind, f64)> {
        BoundKind::ALL
            .into_iter()
            .filter_map(|k| self.constant(k).map(|c| (k, c)))
            .collect()
    }
}

/// Constants and realized ratio for `g(A ♯_α B) ≤ c·(g(A) ♯_α g(B))`.
pub fn tightness_table(pair: &SandwichPair, alpha: f64, g: &DecreasingFunction) -> Result<TightnessRecord> {
    if !g.on_positive_axis() {
        return Err(Error::unmet(format!("{} is not defined on (0, ∞)", g.id())));
    }
    if !pair.holds(REQUIREMENT_TOL)? {
        let (lo, hi) = tightest_sandwich(&pair.a, &pair.b)?;
        return Err(Error::unmet(format!(
            "sandwich {}·A ≤ B ≤ {}·A does not hold (tightest constants {lo}, {hi})",
            pair.s, pair.t
        )));
    }
    let w = Weight::new(alpha)?;
    let (s, t) = (pair.s, pair.t);
    let value = |kind| BoundFamily::new(kind, s, t, alpha).evaluate();
    let kantorovich = value(BoundKind::KantorovichPower)?;
    let dragomir = value(BoundKind::DragomirExp)?;
    let fm = if BoundFamily::new(BoundKind::FmMalpha, s, t, alpha).is_applicable() {
        Some(value(BoundKind::FmMalpha)?)
    } else {
        None
    };
    let specht = value(BoundKind::Specht)?;

    let y = functions::apply(g, &geometric_mean(&pair.a, &pair.b, w)?)?;
    let x = geometric_mean(&functions::apply(g, &pair.a)?, &functions::apply(g, &pair.b)?, w)?;
    let (_, inv_root) = x.sqrt_and_inv_sqrt()?;
    let realized_ratio = y.sandwiched_by(&inv_root)?.max_eigenvalue()?;

    let mut record = TightnessRecord {
        s,
        t,
        alpha,
        function_id: g.id().to_string(),
        kantorovich,
        dragomir,
        fm,
        specht,
        realized_ratio,
        tightest: BoundKind::KantorovichPower,
        dominated: false,
    };
    let applicable = record.applicable();
    let (tightest, smallest) = applicable
        .iter()
        .copied()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least three families always apply");
    record.tightest = tightest;
    record.dominated = realized_ratio <= smallest + DOMINANCE_TOL;
    Ok(record)
}
