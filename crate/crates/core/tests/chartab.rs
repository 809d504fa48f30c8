use orthodet::chartab::{
    char_info, degree_polynomial, harish_chandra, irr_plus, irr_plus_with, order_polynomial,
    validate, CharKind, CharLabel, FieldDesc, RangeMode,
};
use orthodet::groups::{make_group_q, Family};
use proptest::prelude::*;

fn expected_degree(kind: CharKind, q: i64, e: i64) -> i64 {
    match kind {
        CharKind::Qs => q * (q + e),
        CharKind::QCubed => q * q * q,
        CharKind::StPrime => (q + e) * (q * q + e * q + 1) / 3,
        CharKind::St => (q + e) * (q * q + e * q + 1),
        CharKind::Rt => (q - e) * (q * q + e * q + 1),
    }
}

fn odd_q() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 9, 11, 13])
}

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(vec![Family::SL, Family::SU])
}

#[test]
fn small_tables() {
    let sl2 = make_group_q(Family::SL, 2).unwrap();
    assert_eq!(irr_plus(&sl2), vec![CharLabel::qs(), CharLabel::qcubed()]);
    let su2 = make_group_q(Family::SU, 2).unwrap();
    assert_eq!(irr_plus(&su2), vec![CharLabel::qcubed()]);
}

#[test]
fn sl7_table_shape() {
    let g = make_group_q(Family::SL, 7).unwrap();
    let labels = irr_plus(&g);
    let count = |k: CharKind| labels.iter().filter(|l| l.kind == k).count();
    assert_eq!(count(CharKind::Qs), 1);
    assert_eq!(count(CharKind::StPrime), 3);
    // 1 ≤ u < 6 without 2, 3, 4
    assert_eq!(count(CharKind::St), 2);
    assert_eq!(count(CharKind::Rt), 7);
    let info = char_info(&g, &CharLabel::st(1)).unwrap();
    assert_eq!(info.field, FieldDesc::RealCyclotomic { m: 6, j: 1 });
    assert_eq!(
        char_info(&g, &CharLabel::rt(3)).unwrap().field,
        FieldDesc::RealCyclotomic { m: 8, j: 3 }
    );
}

#[test]
fn range_modes_differ_only_for_unitary_rt() {
    let su = make_group_q(Family::SU, 5).unwrap();
    let table = irr_plus_with(&su, RangeMode::Table, false);
    let unitary = irr_plus_with(&su, RangeMode::Unitary, false);
    let rts = |v: &[CharLabel]| v.iter().filter(|l| l.kind == CharKind::Rt).count();
    assert_eq!(rts(&table), 3);
    assert_eq!(rts(&unitary), 5);
    let sl = make_group_q(Family::SL, 5).unwrap();
    assert_eq!(
        irr_plus_with(&sl, RangeMode::Table, false),
        irr_plus_with(&sl, RangeMode::Unitary, false)
    );
}

#[test]
fn invalid_labels_name_the_constraint() {
    let g = make_group_q(Family::SL, 7).unwrap();
    let err = validate(&g, &CharLabel::st(3), RangeMode::Table).unwrap_err();
    assert!(err.to_string().contains("st excludes"));
    assert!(validate(&g, &CharLabel::rt(8), RangeMode::Table).is_err());
    let g5 = make_group_q(Family::SL, 5).unwrap();
    assert!(validate(&g5, &CharLabel::st_prime(0), RangeMode::Table).is_err());
}

#[test]
fn ennola_duality_of_degrees_and_order() {
    for kind in CharKind::ALL {
        let sl = degree_polynomial(Family::SL, kind);
        let su = degree_polynomial(Family::SU, kind);
        assert!(sl.ennola_sign(&su).is_some(), "{kind}");
    }
    let sl = order_polynomial(Family::SL);
    let su = order_polynomial(Family::SU);
    assert!(sl.ennola_sign(&su).is_some());
}

proptest! {
    #[test]
    fn degrees_follow_the_table(fam in family(), q in odd_q()) {
        let g = make_group_q(fam, q).unwrap();
        for label in irr_plus(&g) {
            let info = char_info(&g, &label).unwrap();
            prop_assert_eq!(info.degree as i64, expected_degree(label.kind, q as i64, g.epsilon()));
            prop_assert_eq!(info.degree % 2, 0);
            prop_assert!(info.in_irr_plus);
            prop_assert_eq!(
                degree_polynomial(fam, label.kind).eval(q as i64),
                info.degree as i128
            );
        }
    }

    #[test]
    fn torus_restrictions_have_the_fixed_degree(fam in family(), q in odd_q()) {
        let g = make_group_q(fam, q).unwrap();
        for label in irr_plus(&g) {
            let info = char_info(&g, &label).unwrap();
            let r = harish_chandra(&g, &label).unwrap();
            prop_assert_eq!(r.total_degree, info.hc_degree);
            if !matches!(label.kind, CharKind::Qs | CharKind::QCubed) {
                prop_assert_eq!(r.degenerate, info.degenerate);
            }
            prop_assert!(info.hc_degree <= info.degree);
        }
    }

    #[test]
    fn canonical_table_is_a_subset(fam in family(), q in odd_q()) {
        let g = make_group_q(fam, q).unwrap();
        let full = irr_plus_with(&g, RangeMode::Table, false);
        for l in irr_plus_with(&g, RangeMode::Table, true) {
            prop_assert!(full.contains(&l));
        }
    }
}
