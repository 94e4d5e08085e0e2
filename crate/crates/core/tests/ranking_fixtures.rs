use infoeval_core::{
    check_meta_order, evaluate, fixtures, rank, rank_with, MeasureGroup, MeasureId, MetaOrder, RankReport, TieStyle,
};

fn report(fixture: &str, measure: MeasureId, rounding: u32) -> RankReport {
    let records = fixtures::load(fixture).unwrap();
    let names = records.iter().map(|r| r.matrix.name().unwrap().to_string()).collect();
    let values = records.iter().map(|r| evaluate(measure, &r.matrix).unwrap()).collect();
    rank(names, values, rounding).unwrap()
}

fn intuition_order(fixture: &str) -> MetaOrder {
    let grades: Vec<(String, String)> = fixtures::load(fixture)
        .unwrap()
        .into_iter()
        .filter_map(|r| Some((r.matrix.name()?.to_string(), r.intuition?)))
        .collect();
    MetaOrder::from_letters(&grades).unwrap()
}

fn binary_order(suffix: &str) -> MetaOrder {
    let name = |k: usize| format!("M{k}{suffix}");
    MetaOrder::binary_cost_order(&name(1), &name(2), &name(3), &name(4))
}

fn letters(report: &RankReport) -> Vec<&str> {
    report.letters.iter().map(|l| l.as_deref().unwrap_or("-")).collect()
}

#[test]
fn intuition_letters_give_the_five_binary_pairs() {
    let mut from_letters = intuition_order("binary").constraints().to_vec();
    let mut derived = binary_order("").constraints().to_vec();
    from_letters.sort();
    derived.sort();
    assert_eq!(from_letters, derived);
    assert_eq!(derived.len(), 5);
}

#[test]
fn ni2_satisfies_binary_intuitions() {
    for (fixture, suffix) in [("binary", ""), ("skewed-94", "a"), ("skewed-95", "b")] {
        let r = report(fixture, MeasureId::Ni2, 3);
        assert!(check_meta_order(&r, &binary_order(suffix)).unwrap().is_empty(), "{fixture}");
    }
}

#[test]
fn every_other_group_has_a_violating_measure() {
    let order = binary_order("");
    for group in [MeasureGroup::MutualInformation, MeasureGroup::Divergence, MeasureGroup::CrossEntropy] {
        let violating: Vec<MeasureId> = group
            .measures()
            .filter(|&id| id != MeasureId::Ni2)
            .filter(|&id| {
                !check_meta_order(&report("binary", id, group.default_decimals()), &order).unwrap().is_empty()
            })
            .collect();
        assert!(!violating.is_empty(), "{}", group.name());
    }
}

#[test]
fn ni3_prefers_the_small_class_error() {
    let r = report("binary", MeasureId::Ni3, 3);
    let v = check_meta_order(&r, &binary_order("")).unwrap();
    assert!(v.iter().any(|v| v.better == "M2" && v.worse == "M1"));
    assert_eq!(r.letter_of("M1"), Some("B"));
    assert_eq!(r.letter_of("M2"), Some("D"));
}

#[test]
fn three_class_ni2_letters() {
    let r = report("three-class", MeasureId::Ni2, 3);
    assert_eq!(letters(&r), ["F", "E", "D", "F", "C", "B", "E", "C", "A"]);
}

// The bundled three-class intuition letters are not fully respected by NI2:
// two pairs tie at three decimals and one is reversed.
#[test]
fn three_class_ni2_against_intuition_letters() {
    let r = report("three-class", MeasureId::Ni2, 3);
    let mut found: Vec<(String, String)> =
        check_meta_order(&r, &intuition_order("three-class")).unwrap().into_iter().map(|v| (v.better, v.worse)).collect();
    found.sort();
    let expected = [("M10", "M7"), ("M10", "M8"), ("M13", "M8")];
    assert_eq!(found, expected.map(|(a, b)| (a.to_string(), b.to_string())));
}

#[test]
fn binary_ni1_letters_by_tie_style() {
    let records = fixtures::load("binary").unwrap();
    let names: Vec<String> = (1..=4).map(|k| format!("M{k}")).collect();
    let values: Vec<_> = records[..4].iter().map(|r| evaluate(MeasureId::Ni1, &r.matrix).unwrap()).collect();
    let competition = rank_with(names.clone(), values.clone(), 3, TieStyle::Competition).unwrap();
    assert_eq!(letters(&competition), ["D", "C", "A", "A"]);
    let dense = rank_with(names, values, 3, TieStyle::Dense).unwrap();
    assert_eq!(letters(&dense), ["C", "B", "A", "A"]);
}

#[test]
fn singular_cells_get_no_letter() {
    let r = report("three-class", MeasureId::Ni20, 4);
    for name in ["M9", "M12", "M15"] {
        assert_eq!(r.letter_of(name), None);
    }
    assert_eq!(r.letter_of("M13"), Some("A"));
}
