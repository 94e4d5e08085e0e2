//! Letter rankings of competing models under one measure, and checks of those
//! rankings against an expected partial order.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{MeasureId, MeasureValue, Score};

/// How tied models affect the letters that follow them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TieStyle {
    /// Consecutive letters per distinct value: `1.0, 1.0, 0.9` -> `A, A, B`.
    #[default]
    Dense,
    /// Letters skip over tied positions: `1.0, 1.0, 0.9` -> `A, A, C`.
    Competition,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    pub model_names: Vec<String>,
    pub measure: MeasureId,
    pub values: Vec<MeasureValue>,
    /// `None` for singular or undefined values.
    pub letters: Vec<Option<String>>,
    /// Decimal places the values were rounded to before comparison.
    pub rounding: u32,
    pub style: TieStyle,
}

impl RankReport {
    pub fn letter_of(&self, model: &str) -> Option<&str> {
        let i = self.model_names.iter().position(|n| n == model)?;
        self.letters[i].as_deref()
    }

    fn rounded_of(&self, model: &str) -> Result<Option<f64>> {
        let i =
            self.model_names.iter().position(|n| n == model).ok_or_else(|| Error::UnknownModel(model.to_string()))?;
        Ok(self.values[i].finite().map(|v| round_to(v, self.rounding)))
    }
}

pub fn round_to(value: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    (value * scale).round() / scale
}

/// Letter for a zero-based rank: `A`..`Z`, then `AA`, `AB`, ...
pub fn rank_letter(mut rank: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'A' + (rank % 26) as u8);
        if rank < 26 {
            break;
        }
        rank = rank / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

/// Letter-ranks `values` in descending order after rounding to `rounding`
/// decimals, using dense ties.
pub fn rank(model_names: Vec<String>, values: Vec<MeasureValue>, rounding: u32) -> Result<RankReport> {
    rank_with(model_names, values, rounding, TieStyle::Dense)
}

pub fn rank_with(
    model_names: Vec<String>,
    values: Vec<MeasureValue>,
    rounding: u32,
    style: TieStyle,
) -> Result<RankReport> {
    if model_names.len() != values.len() {
        return Err(Error::LengthMismatch { names: model_names.len(), values: values.len() });
    }
    if values.len() < 2 {
        return Err(Error::TooFewModels(values.len()));
    }
    let measure = values[0].measure;
    if values.iter().any(|v| v.measure != measure) {
        return Err(Error::InvalidArgument("values belong to different measures".into()));
    }

    // Rounded values are keyed by their scaled integer so ties compare exactly.
    let scale = 10f64.powi(rounding as i32);
    let keys: Vec<Option<i64>> = values
        .iter()
        .map(|v| match v.score {
            Score::Finite(x) => Some((x * scale).round() as i64),
            _ => None,
        })
        .collect();
    if keys.iter().all(Option::is_none) {
        return Err(Error::AllSingular);
    }

    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for k in keys.iter().flatten() {
        *counts.entry(*k).or_default() += 1;
    }
    let mut position = BTreeMap::new();
    let mut next = 0;
    for (dense, (&key, &count)) in counts.iter().rev().enumerate() {
        let rank = match style {
            TieStyle::Dense => dense,
            TieStyle::Competition => next,
        };
        position.insert(key, rank);
        next += count;
    }

    let letters = keys.iter().map(|k| k.map(|k| rank_letter(position[&k]))).collect();
    Ok(RankReport { model_names, measure, values, letters, rounding, style })
}

/// Pairwise "better than" constraints between named models.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct MetaOrder {
    constraints: Vec<(String, String)>,
}

impl MetaOrder {
    /// Validates that no constraint is reflexive and that the constraints are acyclic.
    pub fn new(constraints: Vec<(String, String)>) -> Result<Self> {
        for (better, worse) in &constraints {
            if better == worse {
                return Err(Error::ReflexiveConstraint(better.clone()));
            }
        }
        let order = Self { constraints };
        if order.has_cycle() {
            return Err(Error::CyclicOrder);
        }
        Ok(order)
    }

    /// Constraints implied by letter grades: every model with an earlier letter
    /// must beat every model with a later one. Equal letters impose nothing.
    pub fn from_letters<S: AsRef<str>>(grades: &[(S, S)]) -> Result<Self> {
        let mut constraints = Vec::new();
        for (a, la) in grades {
            for (b, lb) in grades {
                let (la, lb) = (la.as_ref(), lb.as_ref());
                if (la.len(), la) < (lb.len(), lb) {
                    constraints.push((a.as_ref().to_string(), b.as_ref().to_string()));
                }
            }
        }
        Self::new(constraints)
    }

    /// Expected ordering of the four canonical binary outcomes, given as the
    /// names of (error in small class, error in large class, reject in small
    /// class, reject in large class). A misclassification or rejection in the
    /// small class costs more than in the large class, and a misclassification
    /// costs more than a rejection from the same class. The relative order of
    /// the large-class error and the small-class reject is left open.
    pub fn binary_cost_order(error_small: &str, error_large: &str, reject_small: &str, reject_large: &str) -> Self {
        let pairs = [
            (error_large, error_small),
            (reject_large, reject_small),
            (reject_large, error_large),
            (reject_small, error_small),
            (reject_large, error_small),
        ];
        Self::new(pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()).expect("fixed acyclic order")
    }

    pub fn constraints(&self) -> &[(String, String)] {
        &self.constraints
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    fn has_cycle(&self) -> bool {
        let nodes: BTreeSet<&str> = self.constraints.iter().flat_map(|(a, b)| [a.as_str(), b.as_str()]).collect();
        let mut indegree: BTreeMap<&str, usize> = nodes.iter().map(|n| (*n, 0)).collect();
        for (_, worse) in &self.constraints {
            *indegree.get_mut(worse.as_str()).unwrap() += 1;
        }
        let mut ready: Vec<&str> = indegree.iter().filter(|(_, d)| **d == 0).map(|(n, _)| *n).collect();
        let mut seen = 0;
        while let Some(node) = ready.pop() {
            seen += 1;
            for (better, worse) in &self.constraints {
                if better == node {
                    let d = indegree.get_mut(worse.as_str()).unwrap();
                    *d -= 1;
                    if *d == 0 {
                        ready.push(worse);
                    }
                }
            }
        }
        seen != nodes.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub better: String,
    pub worse: String,
    /// Rounded values; `None` where the value is singular or undefined.
    pub better_value: Option<f64>,
    pub worse_value: Option<f64>,
}

/// Lists every constraint whose `better` model does not have a strictly higher
/// rounded value than its `worse` model. Singular values satisfy nothing.
pub fn check_meta_order(report: &RankReport, order: &MetaOrder) -> Result<Vec<Violation>> {
    let mut violations = Vec::new();
    for (better, worse) in order.constraints() {
        let b = report.rounded_of(better)?;
        let w = report.rounded_of(worse)?;
        let satisfied = matches!((b, w), (Some(b), Some(w)) if b > w);
        if !satisfied {
            violations.push(Violation {
                better: better.clone(),
                worse: worse.clone(),
                better_value: b,
                worse_value: w,
            });
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(id: MeasureId, xs: &[Option<f64>]) -> Vec<MeasureValue> {
        xs.iter().map(|x| MeasureValue { measure: id, score: x.map_or(Score::Singular, Score::Finite) }).collect()
    }

    fn names(k: usize) -> Vec<String> {
        (1..=k).map(|i| format!("M{i}")).collect()
    }

    fn letters(report: &RankReport) -> Vec<&str> {
        report.letters.iter().map(|l| l.as_deref().unwrap_or("-")).collect()
    }

    #[test]
    fn letters_sequence() {
        assert_eq!(rank_letter(0), "A");
        assert_eq!(rank_letter(25), "Z");
        assert_eq!(rank_letter(26), "AA");
        assert_eq!(rank_letter(27), "AB");
    }

    #[test]
    fn ni1_table_values() {
        let v = values(MeasureId::Ni1, &[Some(0.831), Some(0.897), Some(1.0), Some(1.0)]);
        let dense = rank(names(4), v.clone(), 3).unwrap();
        assert_eq!(letters(&dense), ["C", "B", "A", "A"]);
        let competition = rank_with(names(4), v, 3, TieStyle::Competition).unwrap();
        assert_eq!(letters(&competition), ["D", "C", "A", "A"]);
    }

    #[test]
    fn total_tie_and_distinct_values() {
        let r = rank(names(3), values(MeasureId::Ni2, &[Some(0.5); 3]), 3).unwrap();
        assert_eq!(letters(&r), ["A", "A", "A"]);
        let r =
            rank(names(4), values(MeasureId::Ni2, &[Some(0.720), Some(0.864), Some(0.849), Some(0.997)]), 3).unwrap();
        assert_eq!(letters(&r), ["D", "B", "C", "A"]);
    }

    #[test]
    fn rounding_decides_ties() {
        let v = values(MeasureId::Ni2, &[Some(0.912_081_590_411_922_7), Some(0.912_081_590_411_923), Some(0.95)]);
        assert_eq!(letters(&rank(names(3), v, 3).unwrap()), ["B", "B", "A"]);
        let v = values(MeasureId::Ni2, &[Some(0.9991), Some(0.9992)]);
        assert_eq!(letters(&rank(names(2), v.clone(), 3).unwrap()), ["A", "A"]);
        assert_eq!(letters(&rank(names(2), v, 4).unwrap()), ["B", "A"]);
    }

    #[test]
    fn singular_gets_no_letter() {
        let r = rank(names(3), values(MeasureId::Ni17, &[Some(0.9983), None, Some(0.9985)]), 4).unwrap();
        assert_eq!(letters(&r), ["B", "-", "A"]);
        assert!(matches!(rank(names(2), values(MeasureId::Ni17, &[None, None]), 4), Err(Error::AllSingular)));
        assert!(matches!(rank(names(1), values(MeasureId::Ni17, &[Some(1.0)]), 4), Err(Error::TooFewModels(1))));
        assert!(matches!(
            rank(names(3), values(MeasureId::Ni17, &[Some(1.0), Some(0.5)]), 4),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn meta_order_validation() {
        assert!(matches!(MetaOrder::new(vec![("a".into(), "a".into())]), Err(Error::ReflexiveConstraint(_))));
        assert!(matches!(
            MetaOrder::new(vec![("a".into(), "b".into()), ("b".into(), "c".into()), ("c".into(), "a".into())]),
            Err(Error::CyclicOrder)
        ));
        let binary = MetaOrder::binary_cost_order("M1", "M2", "M3", "M4");
        assert_eq!(binary.constraints().len(), 5);
        let from_letters = MetaOrder::from_letters(&[("M1", "C"), ("M2", "B"), ("M3", "B"), ("M4", "A")]).unwrap();
        let mut a = binary.constraints().to_vec();
        let mut b = from_letters.constraints().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn meta_order_checks() {
        let order = MetaOrder::binary_cost_order("M1", "M2", "M3", "M4");
        let ni2 =
            rank(names(4), values(MeasureId::Ni2, &[Some(0.831), Some(0.897), Some(0.929), Some(0.997)]), 3).unwrap();
        assert!(check_meta_order(&ni2, &order).unwrap().is_empty());

        let ni3 =
            rank(names(4), values(MeasureId::Ni3, &[Some(0.893), Some(0.841), Some(0.909), Some(0.855)]), 3).unwrap();
        let violated = check_meta_order(&ni3, &order).unwrap();
        assert!(violated.iter().any(|v| v.better == "M2" && v.worse == "M1"));

        assert!(check_meta_order(&ni3, &MetaOrder::default()).unwrap().is_empty());
        let unknown = MetaOrder::new(vec![("M9".into(), "M1".into())]).unwrap();
        assert_eq!(check_meta_order(&ni3, &unknown), Err(Error::UnknownModel("M9".into())));
    }
}
