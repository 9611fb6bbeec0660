use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::constants::BoundKind;
use crate::error::{Error, Result};

/// One checkable inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityCase {
    Young,
    Lemma2_1,
    Lemma2_2,
    Lemma2_3,
    LogconvTf,
    InnerprodGm,
    Prop2_4,
    Thm2_5Op,
    Thm2_5Scalar,
    Cor2_6Half,
    Cor2_6Full,
    Cor2_7,
    Cor2_8,
    MoslehianE9,
    MoslehianE10,
    MoslehianE13,
    DragomirE14,
    AczelClassic,
    Popoviciu,
    Lemma3_1,
    Prop3_2,
    Thm3_3Op,
    Thm3_3Scalar,
    Lemma3_4,
    Prop3_5,
    Thm3_6Op,
    Thm3_6Scalar,
    SpechtE17,
}

use InequalityCase::*;

/// What a case operates on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operands {
    /// Arbitrary positive definite `A`, `B`.
    Pair,
    /// `A`, `B` with spectra separated by `m ≤ m′ ≤ M′ ≤ M`.
    SeparatedSpectra,
    /// `sA ≤ B ≤ tA`.
    Sandwich,
    /// `sA^p ≤ B^q ≤ tA^p`.
    PowerSandwich,
    /// `A^p`, `B^q` with spectra in `(0, 1)`.
    UnitIntervalPowers,
    /// Commuting `A`, `B` with spectra in `(0, 1)`.
    CommutingUnitInterval,
    /// Commuting positive definite `A`, `B`.
    CommutingPositive,
    /// A single positive definite `A` and a scale `λ ≥ 1`.
    Single,
    /// Positive sequences `a_i`, `b_i`.
    Sequences,
    /// Reals `a`, `b` and vectors `x`, `y`.
    InnerProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionNeed {
    None,
    /// Non-negative operator monotone decreasing on `(0, ∞)`.
    PositiveAxis,
    /// Additionally operator concave (on its own domain).
    OperatorConcave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorNeed {
    None,
    Any,
    Unit,
}

/// Inputs a case needs in order to be evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Requirements {
    pub operands: Operands,
    /// The weight must be interior so that `p`, `q` exist.
    pub exponents: bool,
    pub function: FunctionNeed,
    pub vector: VectorNeed,
    /// Upper limit on the sandwich constant `t`.
    pub max_t: Option<f64>,
    /// Reverse constant family, if the case has one.
    pub bound: Option<BoundKind>,
}

impl InequalityCase {
    pub const ALL: [InequalityCase; 28] = [
        Young,
        Lemma2_1,
        Lemma2_2,
        Lemma2_3,
        LogconvTf,
        InnerprodGm,
        Prop2_4,
        Thm2_5Op,
        Thm2_5Scalar,
        Cor2_6Half,
        Cor2_6Full,
        Cor2_7,
        Cor2_8,
        MoslehianE9,
        MoslehianE10,
        MoslehianE13,
        DragomirE14,
        AczelClassic,
        Popoviciu,
        Lemma3_1,
        Prop3_2,
        Thm3_3Op,
        Thm3_3Scalar,
        Lemma3_4,
        Prop3_5,
        Thm3_6Op,
        Thm3_6Scalar,
        SpechtE17,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Young => "YOUNG",
            Lemma2_1 => "LEMMA_2_1",
            Lemma2_2 => "LEMMA_2_2",
            Lemma2_3 => "LEMMA_2_3",
            LogconvTf => "LOGCONV_TF",
            InnerprodGm => "INNERPROD_GM",
            Prop2_4 => "PROP_2_4",
            Thm2_5Op => "THM_2_5_OP",
            Thm2_5Scalar => "THM_2_5_SCALAR",
            Cor2_6Half => "COR_2_6_HALF",
            Cor2_6Full => "COR_2_6_FULL",
            Cor2_7 => "COR_2_7",
            Cor2_8 => "COR_2_8",
            MoslehianE9 => "MOSLEHIAN_E9",
            MoslehianE10 => "MOSLEHIAN_E10",
            MoslehianE13 => "MOSLEHIAN_E13",
            DragomirE14 => "DRAGOMIR_E14",
            AczelClassic => "ACZEL_CLASSIC",
            Popoviciu => "POPOVICIU",
            Lemma3_1 => "LEMMA_3_1",
            Prop3_2 => "PROP_3_2",
            Thm3_3Op => "THM_3_3_OP",
            Thm3_3Scalar => "THM_3_3_SCALAR",
            Lemma3_4 => "LEMMA_3_4",
            Prop3_5 => "PROP_3_5",
            Thm3_6Op => "THM_3_6_OP",
            Thm3_6Scalar => "THM_3_6_SCALAR",
            SpechtE17 => "SPECHT_E17",
        }
    }

    pub fn index(&self) -> usize {
        Self::ALL.iter().position(|c| c == self).expect("listed")
    }

    /// Operator (Löwner) cases versus scalar / inner-product cases.
    pub fn is_operator(&self) -> bool {
        matches!(
            self,
            Young
                | Lemma2_1
                | Lemma2_2
                | Lemma2_3
                | LogconvTf
                | Prop2_4
                | Thm2_5Op
                | Cor2_7
                | MoslehianE9
                | Lemma3_1
                | Prop3_2
                | Thm3_3Op
                | Lemma3_4
                | Prop3_5
                | Thm3_6Op
                | SpechtE17
        )
    }

    pub fn requirements(&self) -> Requirements {
        let base = Requirements {
            operands: Operands::Pair,
            exponents: false,
            function: FunctionNeed::None,
            vector: VectorNeed::None,
            max_t: None,
            bound: None,
        };
        let g = FunctionNeed::PositiveAxis;
        let fm = Some(1.0);
        match self {
            Young => base,
            Lemma2_1 => Requirements {
                operands: Operands::SeparatedSpectra,
                bound: Some(BoundKind::KantorovichPower),
                ..base
            },
            Lemma2_2 => sandwich(base, BoundKind::KantorovichPower),
            Lemma2_3 => Requirements {
                operands: Operands::Single,
                function: g,
                ..base
            },
            LogconvTf => Requirements { function: g, ..base },
            InnerprodGm => Requirements {
                vector: VectorNeed::Any,
                ..base
            },
            Prop2_4 => Requirements {
                function: g,
                ..sandwich(base, BoundKind::KantorovichPower)
            },
            Thm2_5Op => power_sandwich(base, BoundKind::KantorovichPower, VectorNeed::None),
            Thm2_5Scalar => power_sandwich(base, BoundKind::KantorovichPower, VectorNeed::Any),
            Cor2_6Half | Cor2_6Full => Requirements {
                operands: Operands::CommutingUnitInterval,
                exponents: true,
                vector: VectorNeed::Unit,
                bound: Some(BoundKind::KantorovichPower),
                ..base
            },
            Cor2_7 => Requirements {
                operands: Operands::CommutingPositive,
                exponents: true,
                function: g,
                bound: Some(BoundKind::KantorovichPower),
                ..base
            },
            Cor2_8 => Requirements {
                operands: Operands::Sequences,
                function: g,
                bound: Some(BoundKind::KantorovichPower),
                ..base
            },
            MoslehianE9 => Requirements {
                operands: Operands::UnitIntervalPowers,
                exponents: true,
                function: FunctionNeed::OperatorConcave,
                ..base
            },
            MoslehianE10 => Requirements {
                operands: Operands::UnitIntervalPowers,
                exponents: true,
                function: FunctionNeed::OperatorConcave,
                vector: VectorNeed::Any,
                ..base
            },
            MoslehianE13 => Requirements {
                operands: Operands::CommutingUnitInterval,
                exponents: true,
                vector: VectorNeed::Unit,
                ..base
            },
            DragomirE14 => Requirements {
                operands: Operands::InnerProduct,
                ..base
            },
            AczelClassic | Popoviciu => Requirements {
                operands: Operands::Sequences,
                ..base
            },
            Lemma3_1 => sandwich(base, BoundKind::DragomirExp),
            Prop3_2 => Requirements {
                function: g,
                ..sandwich(base, BoundKind::DragomirExp)
            },
            Thm3_3Op => power_sandwich(base, BoundKind::DragomirExp, VectorNeed::None),
            Thm3_3Scalar => power_sandwich(base, BoundKind::DragomirExp, VectorNeed::Any),
            Lemma3_4 => Requirements {
                max_t: fm,
                ..sandwich(base, BoundKind::FmMalpha)
            },
            Prop3_5 => Requirements {
                function: g,
                max_t: fm,
                ..sandwich(base, BoundKind::FmMalpha)
            },
            Thm3_6Op => Requirements {
                max_t: fm,
                ..power_sandwich(base, BoundKind::FmMalpha, VectorNeed::None)
            },
            Thm3_6Scalar => Requirements {
                max_t: fm,
                ..power_sandwich(base, BoundKind::FmMalpha, VectorNeed::Any)
            },
            SpechtE17 => Requirements {
                function: g,
                ..sandwich(base, BoundKind::Specht)
            },
        }
    }
}

fn sandwich(base: Requirements, bound: BoundKind) -> Requirements {
    Requirements {
        operands: Operands::Sandwich,
        bound: Some(bound),
        ..base
    }
}

fn power_sandwich(base: Requirements, bound: BoundKind, vector: VectorNeed) -> Requirements {
    Requirements {
        operands: Operands::PowerSandwich,
        exponents: true,
        function: FunctionNeed::PositiveAxis,
        vector,
        bound: Some(bound),
        ..base
    }
}

impl fmt::Display for InequalityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for InequalityCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Self::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown inequality case {s:?}")))
    }
}

impl Serialize for InequalityCase {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for InequalityCase {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
