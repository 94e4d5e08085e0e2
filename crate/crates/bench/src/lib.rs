//! Shared workloads for the criterion benchmarks.

use infoeval_core::{fixtures, AugmentedConfusionMatrix};

/// Every bundled matrix, in fixture order.
pub fn bundled_matrices() -> Vec<AugmentedConfusionMatrix> {
    fixtures::names()
        .flat_map(|name| fixtures::load(name).expect("bundled fixtures parse"))
        .map(|record| record.matrix)
        .collect()
}
