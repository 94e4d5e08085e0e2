use infoeval_core::{
    cross_entropy, divergence, evaluate_all, joint_entropy, mutual_information, rank, shannon_entropy,
    AugmentedConfusionMatrix, DivergenceKind, ExtendedValue, MeasureId, MeasureValue, Score,
};
use proptest::prelude::*;

fn matrix_rows() -> impl Strategy<Value = Vec<Vec<u64>>> {
    (2usize..=4).prop_flat_map(|m| {
        prop::collection::vec(
            prop::collection::vec(0u64..30, m + 1).prop_filter("non-empty row", |r| r.iter().any(|&c| c > 0)),
            m,
        )
    })
}

fn distribution() -> impl Strategy<Value = Vec<f64>> {
    (2usize..6).prop_flat_map(|k| prop::collection::vec(0u32..20, k)).prop_filter_map("non-zero", |w| {
        let total: u32 = w.iter().sum();
        (total > 0).then(|| w.iter().map(|&x| x as f64 / total as f64).collect())
    })
}

proptest! {
    #[test]
    fn counts_are_recovered_from_the_joint(rows in matrix_rows()) {
        let m = AugmentedConfusionMatrix::new(rows.clone()).unwrap();
        let d = m.distribution();
        let n = m.total() as f64;
        for (i, row) in rows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                prop_assert!((d.joint(i, j) * n - c as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn marginals_sum_to_one(rows in matrix_rows()) {
        let d = AugmentedConfusionMatrix::new(rows).unwrap().distribution();
        prop_assert!((d.row_marginal().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!((d.col_marginal().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn missing_reject_column_is_padded(rows in matrix_rows()) {
        let narrow: Vec<Vec<u64>> = rows.iter().map(|r| r[..r.len() - 1].to_vec()).collect();
        prop_assume!(narrow.iter().all(|r| r.iter().any(|&c| c > 0)));
        let padded: Vec<Vec<u64>> = narrow.iter().map(|r| [r.as_slice(), &[0]].concat()).collect();
        prop_assert_eq!(
            AugmentedConfusionMatrix::new(narrow).unwrap(),
            AugmentedConfusionMatrix::new(padded).unwrap()
        );
    }

    #[test]
    fn mutual_information_identity(rows in matrix_rows()) {
        let d = AugmentedConfusionMatrix::new(rows).unwrap().distribution();
        let via_entropies = shannon_entropy(d.row_marginal()) + shannon_entropy(d.col_marginal()) - joint_entropy(&d);
        prop_assert!((mutual_information(&d) - via_entropies).abs() < 1e-9);
    }

    #[test]
    fn cross_entropy_is_entropy_plus_kl(p in distribution(), q in distribution()) {
        prop_assume!(p.len() == q.len());
        match (cross_entropy(&p, &q), divergence(DivergenceKind::KullbackLeibler, &p, &q)) {
            (ExtendedValue::Finite(ce), ExtendedValue::Finite(kl)) => {
                prop_assert!((ce - shannon_entropy(&p) - kl).abs() < 1e-9);
            }
            (ExtendedValue::PositiveInfinity, ExtendedValue::Singular) => {}
            other => prop_assert!(false, "inconsistent: {:?}", other),
        }
    }

    #[test]
    fn symmetric_divergences(p in distribution(), q in distribution()) {
        prop_assume!(p.len() == q.len());
        for kind in DivergenceKind::ALL.into_iter().filter(|k| k.is_symmetric()) {
            match (divergence(kind, &p, &q), divergence(kind, &q, &p)) {
                (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => prop_assert!((a - b).abs() < 1e-9, "{:?}", kind),
                (a, b) => prop_assert_eq!(a, b),
            }
        }
    }

    #[test]
    fn every_measure_is_normalized(rows in matrix_rows()) {
        let m = AugmentedConfusionMatrix::new(rows).unwrap();
        for v in evaluate_all(&m, &MeasureId::ALL[..24]).unwrap() {
            if let Score::Finite(x) = v.score {
                prop_assert!((0.0..=1.0).contains(&x), "{:?} = {}", v.measure, x);
            }
        }
    }

    #[test]
    fn misclassification_weights_strictly_decrease(x in 0.01f64..500.0, dx in 0.01f64..50.0, d in 1u32..20) {
        let d = d as f64;
        let g1 = |x: f64| (x / (x + d)).powf(x);
        let g2 = |x: f64| (d / (x + d)).powf(d);
        prop_assert!(g1(x + dx) < g1(x));
        prop_assert!(g2(x + dx) < g2(x));
    }

    #[test]
    fn letters_follow_values_not_positions(
        xs in prop::collection::vec(0u32..50, 2..8),
        seed in any::<u64>(),
    ) {
        let values: Vec<MeasureValue> = xs
            .iter()
            .map(|&x| MeasureValue { measure: MeasureId::Ni2, score: Score::Finite(x as f64 / 50.0) })
            .collect();
        let names: Vec<String> = (0..xs.len()).map(|i| format!("M{i}")).collect();
        let base = rank(names.clone(), values.clone(), 3).unwrap();

        let mut order: Vec<usize> = (0..xs.len()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let shuffled = rank(
            order.iter().map(|&i| names[i].clone()).collect(),
            order.iter().map(|&i| values[i]).collect(),
            3,
        ).unwrap();
        for name in &names {
            prop_assert_eq!(base.letter_of(name), shuffled.letter_of(name));
        }
    }

    #[test]
    fn appending_a_singular_model_keeps_letters(xs in prop::collection::vec(0u32..50, 2..8)) {
        let values: Vec<MeasureValue> = xs
            .iter()
            .map(|&x| MeasureValue { measure: MeasureId::Ni17, score: Score::Finite(x as f64 / 50.0) })
            .collect();
        let names: Vec<String> = (0..xs.len()).map(|i| format!("M{i}")).collect();
        let base = rank(names.clone(), values.clone(), 4).unwrap();
        let mut more_names = names;
        more_names.push("extra".into());
        let mut more_values = values;
        more_values.push(MeasureValue { measure: MeasureId::Ni17, score: Score::Singular });
        let extended = rank(more_names, more_values, 4).unwrap();
        prop_assert_eq!(&extended.letters[..xs.len()], &base.letters[..]);
        prop_assert_eq!(extended.letters.last().unwrap(), &None);
    }
}
