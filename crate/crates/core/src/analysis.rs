//! Cost analysis of `NI2` around exact binary classification: closed-form
//! changes of the modified mutual information for the four canonical
//! error/reject outcomes, the cross-over point between a large-class error and
//! a small-class rejection, sensitivity functions, and extremum detectors.

use std::fmt;

use serde::Serialize;

use crate::confusion::{AugmentedConfusionMatrix, BinaryConfusion};
use crate::error::{Error, Result};
use crate::measures::{evaluate, MeasureId};

/// The four single-fault outcomes around an exact binary classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CanonicalKind {
    /// `[[C1, 0, 0], [d, C2 - d, 0]]`: small-class samples misclassified.
    ErrorSmall,
    /// `[[C1 - d, d, 0], [0, C2, 0]]`: large-class samples misclassified.
    ErrorLarge,
    /// `[[C1, 0, 0], [0, C2 - d, d]]`: small-class samples rejected.
    RejectSmall,
    /// `[[C1 - d, 0, d], [0, C2, 0]]`: large-class samples rejected.
    RejectLarge,
}

impl CanonicalKind {
    pub const ALL: [CanonicalKind; 4] =
        [CanonicalKind::ErrorSmall, CanonicalKind::ErrorLarge, CanonicalKind::RejectSmall, CanonicalKind::RejectLarge];

    /// Conventional model label, `M1`..`M4`.
    pub fn label(self) -> &'static str {
        match self {
            CanonicalKind::ErrorSmall => "M1",
            CanonicalKind::ErrorLarge => "M2",
            CanonicalKind::RejectSmall => "M3",
            CanonicalKind::RejectLarge => "M4",
        }
    }
}

impl fmt::Display for CanonicalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CanonicalModel {
    pub kind: CanonicalKind,
    /// Size of the large class, `C1`.
    pub large: u64,
    /// Size of the small class, `C2`.
    pub small: u64,
    /// Number of misclassified or rejected samples.
    pub d: u64,
}

impl CanonicalModel {
    pub fn new(kind: CanonicalKind, large: u64, small: u64, d: u64) -> Result<Self> {
        if !(large > small && small > d && d > 0) {
            return Err(Error::InvalidCanonical { large, small, d });
        }
        Ok(Self { kind, large, small, d })
    }

    pub fn n(&self) -> u64 {
        self.large + self.small
    }

    pub fn matrix(&self) -> AugmentedConfusionMatrix {
        let (c1, c2, d) = (self.large, self.small, self.d);
        let rows = match self.kind {
            CanonicalKind::ErrorSmall => vec![vec![c1, 0, 0], vec![d, c2 - d, 0]],
            CanonicalKind::ErrorLarge => vec![vec![c1 - d, d, 0], vec![0, c2, 0]],
            CanonicalKind::RejectSmall => vec![vec![c1, 0, 0], vec![0, c2 - d, d]],
            CanonicalKind::RejectLarge => vec![vec![c1 - d, 0, d], vec![0, c2, 0]],
        };
        AugmentedConfusionMatrix::new(rows).expect("canonical rows are positive").with_name(self.kind.label())
    }

    /// The exact classification `[[C1, 0, 0], [0, C2, 0]]`.
    pub fn baseline(&self) -> AugmentedConfusionMatrix {
        AugmentedConfusionMatrix::new(vec![vec![self.large, 0, 0], vec![0, self.small, 0]])
            .expect("baseline rows are positive")
            .with_name("M0")
    }

    /// Recognizes a binary matrix with exactly one off-diagonal cell in a
    /// canonical position and `C1 > C2 > d > 0`.
    pub fn recognize(matrix: &AugmentedConfusionMatrix) -> Option<Self> {
        if matrix.classes() != 2 {
            return None;
        }
        let off = [(0, 1), (0, 2), (1, 0), (1, 2)];
        let nonzero: Vec<_> = off.iter().filter(|&&(i, j)| matrix.get(i, j) > 0).collect();
        let &&(i, j) = match nonzero.as_slice() {
            [one] => one,
            _ => return None,
        };
        let kind = match (i, j) {
            (1, 0) => CanonicalKind::ErrorSmall,
            (0, 1) => CanonicalKind::ErrorLarge,
            (1, 2) => CanonicalKind::RejectSmall,
            _ => CanonicalKind::RejectLarge,
        };
        Self::new(kind, matrix.row_total(0), matrix.row_total(1), matrix.get(i, j)).ok()
    }

    /// Closed-form `I_M(model) - I_M(M0)` in bits; always negative.
    pub fn delta_i(&self) -> f64 {
        let curves = DeltaCurves::at(self.large as f64, self.small as f64, self.d as f64);
        match self.kind {
            CanonicalKind::ErrorSmall => curves.error_small,
            CanonicalKind::ErrorLarge => curves.error_large,
            CanonicalKind::RejectSmall => curves.reject_small,
            CanonicalKind::RejectLarge => curves.reject_large,
        }
    }
}

pub fn delta_i(model: &CanonicalModel) -> f64 {
    model.delta_i()
}

/// The four closed-form `Delta I` values, with class sizes treated as reals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaCurves {
    pub error_small: f64,
    pub error_large: f64,
    pub reject_small: f64,
    pub reject_large: f64,
}

impl DeltaCurves {
    pub fn at(large: f64, small: f64, d: f64) -> Self {
        let n = large + small;
        let misclassified = |c: f64| (c * (c / (c + d)).log2() + d * (d / (c + d)).log2()) / n;
        Self {
            error_small: misclassified(large),
            error_large: misclassified(small),
            reject_small: d / n * (small / n).log2(),
            reject_large: d / n * (large / n).log2(),
        }
    }
}

fn check_n_d(n: u64, d: u64) -> Result<()> {
    if d == 0 || n <= 2 * d {
        return Err(Error::InvalidArgument(format!("need n > 2d > 0, got n={n}, d={d}")));
    }
    Ok(())
}

/// `Delta I(error in large class) - Delta I(reject in small class)` as a
/// function of the large-class proportion `p1`.
pub fn crossover_function(n: f64, d: f64, p1: f64) -> f64 {
    let c = DeltaCurves::at(p1 * n, (1.0 - p1) * n, d);
    c.error_large - c.reject_small
}

const SCAN_POINTS: usize = 4000;
const BRACKET_MARGIN: f64 = 1e-9;
/// Bisection stops once the bracket is narrower than this.
pub const OMEGA_TOLERANCE: f64 = 1e-12;

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..200 {
        if hi - lo <= OMEGA_TOLERANCE {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Every root of the cross-over function on `(0.5, 1)`, found by scanning a
/// fine grid for sign changes and bisecting each bracket.
pub fn crossover_roots(n: u64, d: u64) -> Result<Vec<f64>> {
    check_n_d(n, d)?;
    let (nf, df) = (n as f64, d as f64);
    let f = |p: f64| crossover_function(nf, df, p);
    let lo = 0.5 + BRACKET_MARGIN;
    let hi = 1.0 - BRACKET_MARGIN;
    let step = (hi - lo) / SCAN_POINTS as f64;

    let mut roots = Vec::new();
    let mut a = lo;
    let mut fa = f(a);
    for k in 1..=SCAN_POINTS {
        let b = if k == SCAN_POINTS { hi } else { lo + k as f64 * step };
        let fb = f(b);
        if fa == 0.0 {
            roots.push(a);
        } else if fb != 0.0 && (fa < 0.0) != (fb < 0.0) {
            roots.push(bisect(f, a, b));
        }
        a = b;
        fa = fb;
    }
    Ok(roots)
}

/// Cross-over point `Omega(n, d)`: the large-class proportion at which a
/// large-class misclassification and a small-class rejection of `d` samples
/// cost the same modified mutual information.
pub fn crossover_omega(n: u64, d: u64) -> Result<f64> {
    let roots = crossover_roots(n, d)?;
    match roots.as_slice() {
        [] => Err(Error::NoSignChange { lo: 0.5, hi: 1.0 }),
        [omega] => Ok(*omega),
        _ => Err(Error::MultipleCrossings { roots }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkewRegime {
    /// `p1 < Omega`: a small-class rejection beats a large-class error.
    General,
    /// `p1 > Omega`: the large-class error is the cheaper fault.
    LargelySkewed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalRanking {
    pub large: u64,
    pub small: u64,
    pub d: u64,
    /// `NI2` of the four outcomes in [`CanonicalKind::ALL`] order.
    pub ni2: [f64; 4],
    /// Outcomes sorted from best to worst by `NI2`.
    pub order: [CanonicalKind; 4],
    pub omega: f64,
    pub regime: SkewRegime,
    /// Whether `order` is the one predicted by the position of `p1` relative to `Omega`.
    pub matches_omega_rule: bool,
    /// Whether the within-type and between-type cost inequalities hold.
    pub cost_inequalities_hold: bool,
}

pub fn ni2_of_canonical(large: u64, small: u64, d: u64) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (slot, kind) in out.iter_mut().zip(CanonicalKind::ALL) {
        let model = CanonicalModel::new(kind, large, small, d)?;
        *slot = evaluate(MeasureId::Ni2, &model.matrix())?.finite().expect("NI2 is finite on canonical models");
    }
    Ok(out)
}

/// Checks `NI2(M1) < NI2(M2)`, `NI2(M3) < NI2(M4)`, `NI2(M1) < NI2(M3)` and
/// `NI2(M2) < NI2(M4)`.
pub fn cost_inequalities_hold(ni2: &[f64; 4]) -> bool {
    let [m1, m2, m3, m4] = *ni2;
    m1 < m2 && m3 < m4 && m1 < m3 && m2 < m4
}

pub fn rank_canonical(large: u64, small: u64, d: u64) -> Result<CanonicalRanking> {
    let ni2 = ni2_of_canonical(large, small, d)?;
    let mut order = CanonicalKind::ALL;
    order.sort_by(|a, b| ni2[*b as usize].total_cmp(&ni2[*a as usize]));

    let n = large + small;
    let omega = crossover_omega(n, d)?;
    let p1 = large as f64 / n as f64;
    let regime = if p1 < omega { SkewRegime::General } else { SkewRegime::LargelySkewed };
    use CanonicalKind::*;
    let expected = match regime {
        SkewRegime::General => [RejectLarge, RejectSmall, ErrorLarge, ErrorSmall],
        SkewRegime::LargelySkewed => [RejectLarge, ErrorLarge, RejectSmall, ErrorSmall],
    };
    Ok(CanonicalRanking {
        large,
        small,
        d,
        ni2,
        order,
        omega,
        regime,
        matches_omega_rule: order == expected,
        cost_inequalities_hold: cost_inequalities_hold(&ni2),
    })
}

/// Partial derivatives of `I_M` (bits per sample) with respect to each cell
/// of a binary confusion matrix, holding the class sizes fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SensitivityVector {
    pub d_tn: f64,
    pub d_tp: f64,
    pub d_fn: f64,
    pub d_fp: f64,
    pub d_rn: f64,
    pub d_rp: f64,
}

// log2(count / (count + other)), or 0 for an empty cell.
fn guarded_log(count: f64, other: f64) -> f64 {
    if count > 0.0 {
        (count / (count + other)).log2()
    } else {
        0.0
    }
}

pub fn sensitivity(b: &BinaryConfusion) -> SensitivityVector {
    let (tn, fp, fn_, tp) = (b.tn as f64, b.fp as f64, b.fn_ as f64, b.tp as f64);
    let (c1, c2, n) = (b.c1() as f64, b.c2() as f64, b.n() as f64);
    let d_tn = ((n / c1).log2() + guarded_log(tn, fn_)) / n;
    let d_tp = ((n / c2).log2() + guarded_log(tp, fp)) / n;
    let d_fn = ((n / c2).log2() + guarded_log(fn_, tn)) / n;
    let d_fp = ((n / c1).log2() + guarded_log(fp, tp)) / n;
    SensitivityVector { d_tn, d_tp, d_fn, d_fp, d_rn: -d_tn - d_fp, d_rp: -d_fn - d_tp }
}

/// First-order estimate of `I_M(to) - I_M(at)` from the sensitivities at `at`.
/// The class sizes must agree, so only the four free cells contribute.
pub fn first_order_delta(at: &BinaryConfusion, to: &BinaryConfusion) -> Result<f64> {
    if at.c1() != to.c1() || at.c2() != to.c2() {
        return Err(Error::InvalidArgument("first-order estimate needs equal class sizes".into()));
    }
    let s = sensitivity(at);
    let step = |a: u64, b: u64| b as f64 - a as f64;
    Ok(step(at.tn, to.tn) * s.d_tn
        + step(at.fp, to.fp) * s.d_fp
        + step(at.fn_, to.fn_) * s.d_fn
        + step(at.tp, to.tp) * s.d_tp)
}

/// Adjacent 2x2 blocks whose rows are proportional and isolated from the rest
/// of the matrix. Each such block contributes nothing to the mutual information,
/// which makes the matrix a local minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalMinimumWitness {
    /// Zero-based `i` of every qualifying block spanning rows and columns `i, i + 1`.
    pub blocks: Vec<usize>,
}

impl LocalMinimumWitness {
    pub fn found(&self) -> bool {
        !self.blocks.is_empty()
    }
}

pub fn detect_mi_local_minimum(matrix: &AugmentedConfusionMatrix) -> LocalMinimumWitness {
    let m = matrix.classes();
    let blocks = (0..m.saturating_sub(1))
        .filter(|&i| {
            let inside = |r: usize, c: usize| (r == i || r == i + 1) && (c == i || c == i + 1);
            let proportional = matrix.get(i, i) as u128 * matrix.get(i + 1, i + 1) as u128
                == matrix.get(i, i + 1) as u128 * matrix.get(i + 1, i) as u128;
            let isolated = (0..m).all(|r| {
                (0..=m).all(|c| {
                    let shares_line = r == i || r == i + 1 || c == i || c == i + 1;
                    inside(r, c) || !shares_line || matrix.get(r, c) == 0
                })
            });
            proportional && isolated
        })
        .collect();
    LocalMinimumWitness { blocks }
}

/// True when the padded target marginal equals the output marginal, i.e. every
/// finite divergence vanishes. Compared exactly on counts.
pub fn detect_divergence_maximum(matrix: &AugmentedConfusionMatrix) -> bool {
    (0..matrix.classes()).all(|i| matrix.row_total(i) == matrix.column_total(i))
        && matrix.column_total(matrix.reject_column()) == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaCurvePoint {
    pub p1: f64,
    pub delta_10: f64,
    pub delta_20: f64,
    pub delta_30: f64,
    pub delta_40: f64,
}

/// Evaluates the four closed-form curves at each `p1`, with `C1 = p1 n` real.
pub fn sweep_delta_curves(n: u64, d: u64, grid: &[f64]) -> Result<Vec<DeltaCurvePoint>> {
    check_n_d(n, d)?;
    let (nf, df) = (n as f64, d as f64);
    grid.iter()
        .map(|&p1| {
            if !(p1 > 0.5 && p1 < 1.0) {
                return Err(Error::InvalidArgument(format!("grid point {p1} outside (0.5, 1)")));
            }
            let c = DeltaCurves::at(p1 * nf, (1.0 - p1) * nf, df);
            Ok(DeltaCurvePoint {
                p1,
                delta_10: c.error_small,
                delta_20: c.error_large,
                delta_30: c.reject_small,
                delta_40: c.reject_large,
            })
        })
        .collect()
}

/// Evenly spaced points `0.5 + k * step` strictly inside `(0.5, 1)`.
pub fn p1_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step < 0.5) {
        return Err(Error::InvalidArgument(format!("grid step must lie in (0, 0.5), got {step}")));
    }
    Ok((1..).map(|k| 0.5 + k as f64 * step).take_while(|p| *p < 1.0 - 1e-12).collect())
}

/// All binary augmented matrices with total `n` and both rows non-empty.
pub fn binary_matrices(n: u64) -> Vec<AugmentedConfusionMatrix> {
    let mut out = Vec::new();
    for c1 in 1..n {
        let c2 = n - c1;
        for tn in 0..=c1 {
            for fp in 0..=c1 - tn {
                for fn_ in 0..=c2 {
                    for tp in 0..=c2 - fn_ {
                        let rows = vec![vec![tn, fp, c1 - tn - fp], vec![fn_, tp, c2 - fn_ - tp]];
                        out.push(AugmentedConfusionMatrix::new(rows).expect("positive rows"));
                    }
                }
            }
        }
    }
    out
}

/// Two matrices that differ only in one diagonal cell, where the one with the
/// larger diagonal count has the smaller measure value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonMonotonicWitness {
    pub measure: MeasureId,
    pub larger_diagonal: AugmentedConfusionMatrix,
    pub smaller_diagonal: AugmentedConfusionMatrix,
    pub value_larger: f64,
    pub value_smaller: f64,
}

/// Searches binary matrices with total at most `max_n` for a pair showing that
/// `measure` is not monotone in the diagonal counts.
pub fn find_non_monotonic_witness(measure: MeasureId, max_n: u64) -> Result<Option<NonMonotonicWitness>> {
    for n in 2..max_n {
        for base in binary_matrices(n) {
            let Some(base_value) = evaluate(measure, &base)?.finite() else { continue };
            for k in 0..2 {
                let mut rows = base.to_rows();
                rows[k][k] += 1;
                let bumped = AugmentedConfusionMatrix::new(rows)?;
                let Some(bumped_value) = evaluate(measure, &bumped)?.finite() else { continue };
                if bumped_value < base_value - 1e-12 {
                    return Ok(Some(NonMonotonicWitness {
                        measure,
                        larger_diagonal: bumped,
                        smaller_diagonal: base,
                        value_larger: bumped_value,
                        value_smaller: base_value,
                    }));
                }
            }
        }
    }
    Ok(None)
}
