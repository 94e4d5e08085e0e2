//! Shannon entropy, mutual information, cross-entropy and divergences over
//! discrete distributions, with explicit handling of zero probabilities.
//!
//! All logarithms are base 2. Terms with zero weight contribute nothing
//! (`0 log 0 = 0`). A strictly positive weight against a zero probability is
//! not removable: cross-entropy reports it as [`ExtendedValue::PositiveInfinity`],
//! the divergences as [`ExtendedValue::Singular`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::confusion::EmpiricalDistribution;

/// Round-off allowance for quantities that are non-negative in exact arithmetic.
const ROUNDOFF: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtendedValue {
    /// Finite value in bits (or in the divergence's native units).
    Finite(f64),
    PositiveInfinity,
    Singular,
}

impl ExtendedValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedValue::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedValue::Finite(_))
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(v) => write!(f, "{v}"),
            ExtendedValue::PositiveInfinity => f.write_str("inf"),
            ExtendedValue::Singular => f.write_str("S"),
        }
    }
}

/// The eleven divergences, in catalog order (`D10` through `D20`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DivergenceKind {
    /// Euclidean quadratic divergence, `sum (p - q)^2`.
    QuadraticEuclidean,
    /// Cauchy-Schwarz quadratic divergence.
    QuadraticCauchySchwarz,
    KullbackLeibler,
    Bhattacharyya,
    /// Pearson chi-squared, weighted by the output marginal.
    PearsonChiSquared,
    /// Squared Hellinger distance, `sum (sqrt p - sqrt q)^2`.
    Hellinger,
    /// Variation (L1) distance.
    Variation,
    /// J divergence, `KL(p, q) + KL(q, p)`.
    J,
    /// L (Jensen-Shannon) divergence, `KL(p, m) + KL(q, m)` with `m` the midpoint.
    JensenShannon,
    SymmetricChiSquared,
    /// Resistor-average distance, `KL(p,q) KL(q,p) / (KL(p,q) + KL(q,p))`.
    ResistorAverage,
}

impl DivergenceKind {
    pub const ALL: [DivergenceKind; 11] = [
        DivergenceKind::QuadraticEuclidean,
        DivergenceKind::QuadraticCauchySchwarz,
        DivergenceKind::KullbackLeibler,
        DivergenceKind::Bhattacharyya,
        DivergenceKind::PearsonChiSquared,
        DivergenceKind::Hellinger,
        DivergenceKind::Variation,
        DivergenceKind::J,
        DivergenceKind::JensenShannon,
        DivergenceKind::SymmetricChiSquared,
        DivergenceKind::ResistorAverage,
    ];

    /// Whether swapping the two arguments leaves the value unchanged.
    pub fn is_symmetric(self) -> bool {
        !matches!(self, DivergenceKind::KullbackLeibler | DivergenceKind::PearsonChiSquared)
    }

    pub fn name(self) -> &'static str {
        match self {
            DivergenceKind::QuadraticEuclidean => "QD_ED",
            DivergenceKind::QuadraticCauchySchwarz => "QD_CS",
            DivergenceKind::KullbackLeibler => "KL",
            DivergenceKind::Bhattacharyya => "D_B",
            DivergenceKind::PearsonChiSquared => "chi2",
            DivergenceKind::Hellinger => "H2",
            DivergenceKind::Variation => "V",
            DivergenceKind::J => "J",
            DivergenceKind::JensenShannon => "L",
            DivergenceKind::SymmetricChiSquared => "chi2_S",
            DivergenceKind::ResistorAverage => "D_RA",
        }
    }
}

/// `x log2 x`, zero at `x = 0`.
#[inline]
fn x_log_x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

/// Snaps round-off below zero back to zero for quantities that cannot be negative.
#[inline]
fn non_negative(v: f64) -> f64 {
    if v < 0.0 && v > -ROUNDOFF {
        0.0
    } else {
        v
    }
}

pub fn shannon_entropy(p: &[f64]) -> f64 {
    non_negative(-p.iter().copied().map(x_log_x).sum::<f64>())
}

// Mutual information restricted to the first `columns` output columns.
fn mutual_information_over(d: &EmpiricalDistribution, columns: usize) -> f64 {
    let pt = d.row_marginal();
    let py = d.col_marginal();
    let mut total = 0.0;
    for (i, &p_t) in pt.iter().enumerate() {
        for (j, &p_y) in py.iter().enumerate().take(columns) {
            let p = d.joint(i, j);
            if p > 0.0 {
                total += p * (p / (p_t * p_y)).log2();
            }
        }
    }
    non_negative(total)
}

/// Empirical mutual information `I(T, Y)` summed over all `m + 1` output columns.
pub fn mutual_information(d: &EmpiricalDistribution) -> f64 {
    mutual_information_over(d, d.columns())
}

/// Modified mutual information `I_M(T, Y)`: the same sum restricted to the `m`
/// non-reject columns, i.e. to the intersection of the supports of T and Y.
pub fn modified_mutual_information(d: &EmpiricalDistribution) -> f64 {
    mutual_information_over(d, d.classes())
}

/// Joint entropy `H(T, Y)`.
pub fn joint_entropy(d: &EmpiricalDistribution) -> f64 {
    shannon_entropy(d.joint_cells())
}

/// Cross-entropy `H(p; q) = -sum p log2 q`.
pub fn cross_entropy(p: &[f64], q: &[f64]) -> ExtendedValue {
    assert_eq!(p.len(), q.len(), "cross-entropy needs distributions on the same support");
    let mut total = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a > 0.0 {
            if b <= 0.0 {
                return ExtendedValue::PositiveInfinity;
            }
            total -= a * b.log2();
        }
    }
    ExtendedValue::Finite(non_negative(total))
}

fn kullback_leibler(p: &[f64], q: &[f64]) -> ExtendedValue {
    let mut total = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a > 0.0 {
            if b <= 0.0 {
                return ExtendedValue::Singular;
            }
            total += a * (a / b).log2();
        }
    }
    ExtendedValue::Finite(non_negative(total))
}

fn pearson_chi_squared(p: &[f64], q: &[f64]) -> ExtendedValue {
    let mut total = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if b > 0.0 {
            total += (a - b) * (a - b) / b;
        } else if a > 0.0 {
            return ExtendedValue::Singular;
        }
    }
    ExtendedValue::Finite(total)
}

fn sum2(a: ExtendedValue, b: ExtendedValue) -> ExtendedValue {
    match (a, b) {
        (ExtendedValue::Finite(x), ExtendedValue::Finite(y)) => ExtendedValue::Finite(x + y),
        _ => ExtendedValue::Singular,
    }
}

/// Divergence `D(p, q)` between the padded target marginal `p` and the output
/// marginal `q`.
///
/// The resistor-average distance is reported as singular whenever
/// `KL(p,q) + KL(q,p) = 0`, since its defining ratio is then `0 / 0`.
pub fn divergence(kind: DivergenceKind, p: &[f64], q: &[f64]) -> ExtendedValue {
    assert_eq!(p.len(), q.len(), "divergence needs distributions on the same support");
    use DivergenceKind::*;
    let value = match kind {
        QuadraticEuclidean => ExtendedValue::Finite(p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum()),
        QuadraticCauchySchwarz => {
            let pp: f64 = p.iter().map(|a| a * a).sum();
            let qq: f64 = q.iter().map(|b| b * b).sum();
            let pq: f64 = p.iter().zip(q).map(|(a, b)| a * b).sum();
            if pq > 0.0 {
                ExtendedValue::Finite((pp * qq / (pq * pq)).log2())
            } else {
                ExtendedValue::Singular
            }
        }
        KullbackLeibler => kullback_leibler(p, q),
        Bhattacharyya => {
            let bc: f64 = p.iter().zip(q).map(|(a, b)| (a * b).sqrt()).sum();
            if bc > 0.0 {
                ExtendedValue::Finite(-bc.log2())
            } else {
                ExtendedValue::Singular
            }
        }
        PearsonChiSquared => pearson_chi_squared(p, q),
        Hellinger => ExtendedValue::Finite(p.iter().zip(q).map(|(a, b)| (a.sqrt() - b.sqrt()).powi(2)).sum()),
        Variation => ExtendedValue::Finite(p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum()),
        J => sum2(kullback_leibler(p, q), kullback_leibler(q, p)),
        JensenShannon => {
            let mid: Vec<f64> = p.iter().zip(q).map(|(a, b)| 0.5 * (a + b)).collect();
            sum2(kullback_leibler(p, &mid), kullback_leibler(q, &mid))
        }
        SymmetricChiSquared => sum2(pearson_chi_squared(p, q), pearson_chi_squared(q, p)),
        ResistorAverage => match (kullback_leibler(p, q), kullback_leibler(q, p)) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) if a + b > 0.0 => {
                ExtendedValue::Finite(a * b / (a + b))
            }
            _ => ExtendedValue::Singular,
        },
    };
    match value {
        ExtendedValue::Finite(v) => ExtendedValue::Finite(non_negative(v)),
        other => other,
    }
}
