//! The catalog of 24 normalized information measures and 7 conventional
//! performance measures, evaluated from an augmented confusion matrix.
//!
//! * `NI1`-`NI9`: mutual information normalized by marginal or joint entropies.
//!   `NI2` uses the modified mutual information, which ignores the reject column.
//! * `NI10`-`NI20`: `exp(-D)` of a divergence between the padded target marginal
//!   and the output marginal (`D` in bits, natural exponential).
//! * `NI21`-`NI24`: ratios of entropies to cross-entropies.
//! * `CR`, `E`, `Rej`, `A`, `Precision`, `Recall`, `F1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::confusion::{AugmentedConfusionMatrix, EmpiricalDistribution};
use crate::error::{Error, Result};
use crate::information::{
    cross_entropy, divergence, joint_entropy, modified_mutual_information, mutual_information, shannon_entropy,
    DivergenceKind, ExtendedValue,
};

/// Slack allowed outside `[0, 1]` before a computed value counts as out of range.
pub const RANGE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureGroup {
    MutualInformation,
    Divergence,
    CrossEntropy,
    Performance,
}

impl MeasureGroup {
    pub const ALL: [MeasureGroup; 4] = [
        MeasureGroup::MutualInformation,
        MeasureGroup::Divergence,
        MeasureGroup::CrossEntropy,
        MeasureGroup::Performance,
    ];

    pub fn measures(self) -> impl Iterator<Item = MeasureId> {
        MeasureId::ALL.into_iter().filter(move |m| m.group() == self)
    }

    /// Decimal places conventionally used when printing or ranking this group.
    pub fn default_decimals(self) -> u32 {
        match self {
            MeasureGroup::Divergence => 4,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MeasureGroup::MutualInformation => "mi",
            MeasureGroup::Divergence => "divergence",
            MeasureGroup::CrossEntropy => "cross-entropy",
            MeasureGroup::Performance => "performance",
        }
    }
}

impl FromStr for MeasureGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mi" | "mutual-information" | "mutual_information" => Ok(MeasureGroup::MutualInformation),
            "divergence" | "div" => Ok(MeasureGroup::Divergence),
            "cross-entropy" | "cross_entropy" | "ce" => Ok(MeasureGroup::CrossEntropy),
            "performance" | "perf" => Ok(MeasureGroup::Performance),
            _ => Err(Error::UnknownMeasure(s.to_string())),
        }
    }
}

/// Identifier of one catalog entry. Declaration order is catalog order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureId {
    Ni1,
    Ni2,
    Ni3,
    Ni4,
    Ni5,
    Ni6,
    Ni7,
    Ni8,
    Ni9,
    Ni10,
    Ni11,
    Ni12,
    Ni13,
    Ni14,
    Ni15,
    Ni16,
    Ni17,
    Ni18,
    Ni19,
    Ni20,
    Ni21,
    Ni22,
    Ni23,
    Ni24,
    CorrectRate,
    ErrorRate,
    RejectRate,
    Accuracy,
    Precision,
    Recall,
    F1,
}

impl MeasureId {
    pub const ALL: [MeasureId; 31] = [
        MeasureId::Ni1,
        MeasureId::Ni2,
        MeasureId::Ni3,
        MeasureId::Ni4,
        MeasureId::Ni5,
        MeasureId::Ni6,
        MeasureId::Ni7,
        MeasureId::Ni8,
        MeasureId::Ni9,
        MeasureId::Ni10,
        MeasureId::Ni11,
        MeasureId::Ni12,
        MeasureId::Ni13,
        MeasureId::Ni14,
        MeasureId::Ni15,
        MeasureId::Ni16,
        MeasureId::Ni17,
        MeasureId::Ni18,
        MeasureId::Ni19,
        MeasureId::Ni20,
        MeasureId::Ni21,
        MeasureId::Ni22,
        MeasureId::Ni23,
        MeasureId::Ni24,
        MeasureId::CorrectRate,
        MeasureId::ErrorRate,
        MeasureId::RejectRate,
        MeasureId::Accuracy,
        MeasureId::Precision,
        MeasureId::Recall,
        MeasureId::F1,
    ];

    /// Position in the catalog, starting at 0.
    pub fn index(self) -> usize {
        self as usize
    }

    /// The `k` of `NIk`, or `None` for performance measures.
    pub fn ni_number(self) -> Option<usize> {
        (self.index() < 24).then(|| self.index() + 1)
    }

    pub fn from_ni_number(k: usize) -> Option<MeasureId> {
        (1..=24).contains(&k).then(|| MeasureId::ALL[k - 1])
    }

    pub fn group(self) -> MeasureGroup {
        match self.index() {
            0..=8 => MeasureGroup::MutualInformation,
            9..=19 => MeasureGroup::Divergence,
            20..=23 => MeasureGroup::CrossEntropy,
            _ => MeasureGroup::Performance,
        }
    }

    /// The divergence behind a divergence-group measure.
    pub fn divergence_kind(self) -> Option<DivergenceKind> {
        (self.group() == MeasureGroup::Divergence).then(|| DivergenceKind::ALL[self.index() - 9])
    }

    pub fn name(self) -> &'static str {
        const NAMES: [&str; 31] = [
            "NI1",
            "NI2",
            "NI3",
            "NI4",
            "NI5",
            "NI6",
            "NI7",
            "NI8",
            "NI9",
            "NI10",
            "NI11",
            "NI12",
            "NI13",
            "NI14",
            "NI15",
            "NI16",
            "NI17",
            "NI18",
            "NI19",
            "NI20",
            "NI21",
            "NI22",
            "NI23",
            "NI24",
            "CR",
            "E",
            "Rej",
            "A",
            "Precision",
            "Recall",
            "F1",
        ];
        NAMES[self.index()]
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        MeasureId::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(trimmed))
            .ok_or_else(|| Error::UnknownMeasure(trimmed.to_string()))
    }
}

impl Serialize for MeasureId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for MeasureId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated selection of group names, measure ids, or `all`.
pub fn parse_selection(spec: &str) -> Result<Vec<MeasureId>> {
    let mut chosen = Vec::new();
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if token.eq_ignore_ascii_case("all") {
            chosen.extend(MeasureId::ALL);
        } else if token.eq_ignore_ascii_case("ni") {
            chosen.extend(MeasureId::ALL.into_iter().filter(|m| m.ni_number().is_some()));
        } else if let Ok(group) = token.parse::<MeasureGroup>() {
            chosen.extend(group.measures());
        } else {
            chosen.push(token.parse()?);
        }
    }
    chosen.sort();
    chosen.dedup();
    if chosen.is_empty() {
        return Err(Error::EmptySelection);
    }
    Ok(chosen)
}

/// Outcome of evaluating one measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Score {
    Finite(f64),
    /// Division by zero or log of zero that cannot be removed.
    Singular,
    /// The measure is not defined for this input (precision on a 3-class
    /// matrix, accuracy when every sample is rejected).
    Undefined,
}

impl Score {
    pub fn finite(self) -> Option<f64> {
        match self {
            Score::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_singular(self) -> bool {
        matches!(self, Score::Singular)
    }
}

impl Serialize for Score {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Score::Finite(v) => serializer.serialize_f64(*v),
            Score::Singular => serializer.serialize_str("S"),
            Score::Undefined => serializer.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureValue {
    pub measure: MeasureId,
    pub score: Score,
}

impl MeasureValue {
    pub fn finite(&self) -> Option<f64> {
        self.score.finite()
    }
}

/// Conventional rates. Precision, recall and F1 treat class 1 as the reference
/// class and exist only for binary matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerformanceSummary {
    pub correct_rate: f64,
    pub error_rate: f64,
    pub reject_rate: f64,
    pub accuracy: Option<f64>,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

pub fn performance_summary(matrix: &AugmentedConfusionMatrix) -> PerformanceSummary {
    let n = matrix.total();
    let m = matrix.classes();
    let correct: u64 = (0..m).map(|i| matrix.get(i, i)).sum();
    let rejected = matrix.column_total(matrix.reject_column());
    let wrong = n - correct - rejected;
    let nf = n as f64;

    let (precision, recall) = if m == 2 {
        let tn = matrix.get(0, 0);
        (ratio(tn, tn + matrix.get(1, 0)), ratio(tn, matrix.row_total(0) - matrix.get(0, 2)))
    } else {
        (None, None)
    };
    let f1 = match (precision, recall) {
        (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
        (Some(_), Some(_)) => Some(0.0),
        _ => None,
    };

    PerformanceSummary {
        correct_rate: correct as f64 / nf,
        error_rate: wrong as f64 / nf,
        reject_rate: rejected as f64 / nf,
        accuracy: ratio(correct, correct + wrong),
        precision,
        recall,
        f1,
    }
}

/// Entropies and information quantities shared by the whole catalog; computing
/// them once lets a full evaluation avoid repeated passes over the matrix.
#[derive(Debug, Clone)]
pub struct InformationProfile {
    pub h_target: f64,
    pub h_output: f64,
    pub h_joint: f64,
    pub mutual: f64,
    pub modified_mutual: f64,
    /// Target marginal padded with a zero at the reject position.
    pub target: Vec<f64>,
    pub output: Vec<f64>,
}

impl InformationProfile {
    pub fn new(d: &EmpiricalDistribution) -> Self {
        Self {
            h_target: shannon_entropy(d.row_marginal()),
            h_output: shannon_entropy(d.col_marginal()),
            h_joint: joint_entropy(d),
            mutual: mutual_information(d),
            modified_mutual: modified_mutual_information(d),
            target: d.padded_row_marginal(),
            output: d.col_marginal().to_vec(),
        }
    }

    fn score(&self, id: MeasureId) -> Score {
        use MeasureId::*;
        let i = self.mutual;
        let (ht, hy) = (self.h_target, self.h_output);
        match id {
            Ni1 => mi_ratio(i, ht),
            Ni2 => mi_ratio(self.modified_mutual, ht),
            Ni3 => mi_ratio(i, hy),
            Ni4 => match (mi_ratio(i, ht), mi_ratio(i, hy)) {
                (Score::Finite(a), Score::Finite(b)) => Score::Finite(0.5 * (a + b)),
                _ => Score::Singular,
            },
            Ni5 => mi_ratio(2.0 * i, ht + hy),
            Ni6 => mi_ratio(i, (ht * hy).sqrt()),
            Ni7 => mi_ratio(i, self.h_joint),
            Ni8 => mi_ratio(i, ht.max(hy)),
            Ni9 => mi_ratio(i, ht.min(hy)),
            Ni21 => self.cross_entropy_ratio(false),
            Ni22 => self.cross_entropy_ratio(true),
            Ni23 => match (self.cross_entropy_ratio(false), self.cross_entropy_ratio(true)) {
                (Score::Finite(a), Score::Finite(b)) => Score::Finite(0.5 * (a + b)),
                _ => Score::Singular,
            },
            Ni24 => {
                let forward = cross_entropy(&self.target, &self.output);
                let backward = cross_entropy(&self.output, &self.target);
                match (forward, backward) {
                    (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => Score::Finite((ht + hy) / (a + b)),
                    // An infinite pooled denominator drives the ratio to zero.
                    _ => Score::Finite(0.0),
                }
            }
            _ => match id.divergence_kind() {
                Some(kind) => match divergence(kind, &self.target, &self.output) {
                    ExtendedValue::Finite(d) => Score::Finite((-d).exp()),
                    _ => Score::Singular,
                },
                None => unreachable!("performance measures are handled by the caller"),
            },
        }
    }

    // H(T)/H(T;Y), or H(Y)/H(Y;T) when `reverse`. An infinite cross-entropy maps to 0.
    fn cross_entropy_ratio(&self, reverse: bool) -> Score {
        let (entropy, ce) = if reverse {
            (self.h_output, cross_entropy(&self.output, &self.target))
        } else {
            (self.h_target, cross_entropy(&self.target, &self.output))
        };
        match ce {
            ExtendedValue::Finite(c) if c > 0.0 => Score::Finite(entropy / c),
            ExtendedValue::Finite(_) => {
                if entropy == 0.0 {
                    Score::Finite(0.0)
                } else {
                    Score::Singular
                }
            }
            _ => Score::Finite(0.0),
        }
    }
}

// A vanishing denominator means the output marginal is degenerate. Mutual
// information is then zero as well, so 0/0 resolves to 0; a positive numerator
// over zero would be a genuine singularity.
fn mi_ratio(numerator: f64, denominator: f64) -> Score {
    if denominator > 0.0 {
        Score::Finite(numerator / denominator)
    } else if numerator.abs() <= RANGE_TOLERANCE {
        Score::Finite(0.0)
    } else {
        Score::Singular
    }
}

fn checked(measure: MeasureId, score: Score) -> Result<MeasureValue> {
    let score = match score {
        Score::Finite(v) if v.is_nan() || !(-RANGE_TOLERANCE..=1.0 + RANGE_TOLERANCE).contains(&v) => {
            return Err(Error::OutOfRange { measure: measure.name().to_string(), value: v });
        }
        // Round-off at the ends of the unit interval.
        Score::Finite(v) => Score::Finite(v.clamp(0.0, 1.0)),
        other => other,
    };
    Ok(MeasureValue { measure, score })
}

fn performance_score(summary: &PerformanceSummary, id: MeasureId) -> Score {
    let value = match id {
        MeasureId::CorrectRate => Some(summary.correct_rate),
        MeasureId::ErrorRate => Some(summary.error_rate),
        MeasureId::RejectRate => Some(summary.reject_rate),
        MeasureId::Accuracy => summary.accuracy,
        MeasureId::Precision => summary.precision,
        MeasureId::Recall => summary.recall,
        MeasureId::F1 => summary.f1,
        _ => unreachable!("{id} is not a performance measure"),
    };
    value.map_or(Score::Undefined, Score::Finite)
}

/// Evaluates a single measure.
///
/// Returns [`Error::OutOfRange`] if a finite value escapes `[0, 1]` by more than
/// [`RANGE_TOLERANCE`]; that would indicate a numerical defect, not bad input.
pub fn evaluate(id: MeasureId, matrix: &AugmentedConfusionMatrix) -> Result<MeasureValue> {
    if id.group() == MeasureGroup::Performance {
        return checked(id, performance_score(&performance_summary(matrix), id));
    }
    let profile = InformationProfile::new(&matrix.distribution());
    checked(id, profile.score(id))
}

/// Evaluates every selected measure, in catalog order regardless of the order
/// of `selection`.
pub fn evaluate_all(matrix: &AugmentedConfusionMatrix, selection: &[MeasureId]) -> Result<Vec<MeasureValue>> {
    if selection.is_empty() {
        return Err(Error::EmptySelection);
    }
    let mut ids = selection.to_vec();
    ids.sort();
    ids.dedup();

    let profile = ids
        .iter()
        .any(|m| m.group() != MeasureGroup::Performance)
        .then(|| InformationProfile::new(&matrix.distribution()));
    let summary = performance_summary(matrix);

    ids.into_iter()
        .map(|id| {
            let score = match (&profile, id.group()) {
                (_, MeasureGroup::Performance) => performance_score(&summary, id),
                (Some(p), _) => p.score(id),
                (None, _) => unreachable!(),
            };
            checked(id, score)
        })
        .collect()
}
