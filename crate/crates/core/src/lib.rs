//! Objective evaluation of classifications with a reject option.
//!
//! The only input is an augmented confusion matrix: `m` rows of true classes
//! and `m + 1` columns of predictions, the last one counting rejected samples.
//! From it the crate computes 24 normalized information measures in `[0, 1]`
//! (mutual-information, divergence and cross-entropy based), conventional
//! performance rates, letter rankings across competing models, and the
//! closed-form cost analysis of the modified mutual information for binary
//! problems.
//!
//! ```
//! use infoeval_core::{evaluate, AugmentedConfusionMatrix, MeasureId};
//!
//! let m3 = AugmentedConfusionMatrix::new(vec![vec![90, 0, 0], vec![0, 9, 1]]).unwrap();
//! let ni2 = evaluate(MeasureId::Ni2, &m3).unwrap().finite().unwrap();
//! assert!((ni2 - 0.929).abs() < 5e-4);
//! ```

pub mod analysis;
pub mod confusion;
pub mod error;
pub mod fixtures;
pub mod information;
pub mod measures;
pub mod ranking;

pub use analysis::{
    crossover_omega, delta_i, detect_divergence_maximum, detect_mi_local_minimum, rank_canonical, sensitivity,
    sweep_delta_curves, CanonicalKind, CanonicalModel, CanonicalRanking, DeltaCurvePoint, LocalMinimumWitness,
    SensitivityVector,
};
pub use confusion::{
    empirical_distributions, parse_matrix, parse_records, to_binary, AugmentedConfusionMatrix, BinaryConfusion,
    EmpiricalDistribution, InputFormat, InputRecord,
};
pub use error::{Error, Result};
pub use information::{
    cross_entropy, divergence, joint_entropy, modified_mutual_information, mutual_information, shannon_entropy,
    DivergenceKind, ExtendedValue,
};
pub use measures::{
    evaluate, evaluate_all, parse_selection, performance_summary, MeasureGroup, MeasureId, MeasureValue,
    PerformanceSummary, Score,
};
pub use ranking::{check_meta_order, rank, rank_with, MetaOrder, RankReport, TieStyle, Violation};
