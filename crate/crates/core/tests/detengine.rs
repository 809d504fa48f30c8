use num_bigint::BigInt;
use orthodet::chartab::{char_info, irr_plus, is_degenerate, CharKind, CharLabel};
use orthodet::cyclo::{class_eq, delta, square_class, SquareClass};
use orthodet::detengine::{cross_check, det_main, rational_class, Verdict};
use orthodet::groups::{make_group_q, Family, GroupSpec};
use orthodet::Error;
use proptest::prelude::*;

fn sf(n: i64) -> BigInt {
    orthodet::cyclo::squarefree_part(&BigInt::from(n)).unwrap()
}

/// The tabulated determinant, built directly from the closed formulas.
fn expected(g: &GroupSpec, label: &CharLabel) -> SquareClass {
    let q = g.q() as i64;
    let odd = q % 2 == 1;
    let k = char_info(g, label).unwrap().field.real_field().unwrap();
    let times_delta = |m: i64| {
        let d = delta(m as u64, label.u.unwrap() as i64)
            .unwrap()
            .to_field(&k)
            .unwrap();
        square_class(&k, &d.scale(&BigInt::from(q).into())).unwrap()
    };
    let rat = |n: i64| SquareClass::Rational(sf(n)).to_field(&k).unwrap();
    match (g.family(), odd, label.kind) {
        (Family::SL, true, CharKind::Qs) => rat(q * q + q + 1),
        (Family::SL, true, CharKind::StPrime) => rat(3 * q),
        (Family::SL, true, CharKind::St) => times_delta(q - 1),
        (Family::SL, true, CharKind::Rt) => rat(q),
        (Family::SU, true, CharKind::StPrime | CharKind::St) => rat(q),
        (Family::SU, true, CharKind::Rt) => times_delta(q - 1),
        (Family::SL, false, CharKind::Qs) => rat(q * q + q + 1),
        (Family::SL, false, CharKind::QCubed) => rat((q + 1) * (q * q + q + 1)),
        (Family::SU, false, CharKind::QCubed) => rat(q * q * q + 1),
        _ => unreachable!("{label} is not in the table"),
    }
}

#[test]
fn command_line_examples() {
    let sl7 = make_group_q(Family::SL, 7).unwrap();
    let r = det_main(&sl7, &CharLabel::st(1)).unwrap();
    assert_eq!(rational_class(&r.value), Some(BigInt::from(21)));
    let sl2 = make_group_q(Family::SL, 2).unwrap();
    assert_eq!(
        rational_class(&det_main(&sl2, &CharLabel::qs()).unwrap().value),
        Some(BigInt::from(7))
    );
    let su4 = make_group_q(Family::SU, 4).unwrap();
    assert_eq!(
        rational_class(&det_main(&su4, &CharLabel::qcubed()).unwrap().value),
        Some(BigInt::from(65))
    );
}

#[test]
fn degenerate_unitary_rt_is_refused() {
    let su3 = make_group_q(Family::SU, 3).unwrap();
    assert!(is_degenerate(&su3, &CharLabel::rt(1)));
    assert!(matches!(
        det_main(&su3, &CharLabel::rt(1)),
        Err(Error::Degenerate(_))
    ));
    let report = cross_check(&su3);
    let e = report
        .entries
        .iter()
        .find(|e| e.label == CharLabel::rt(1))
        .unwrap();
    assert!(matches!(e.verdict, Verdict::Skipped(_)));
}

#[test]
fn third_root_identity_for_stprime_fields() {
    // δ(q - 1, (q - 1)/3) = 3 makes st at u = (q-1)/3 collapse to 3q
    for q in [7i64, 13] {
        let d = delta((q - 1) as u64, (q - 1) / 3).unwrap();
        assert_eq!(d.as_rational(), Some(BigInt::from(3).into()));
    }
}

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(vec![Family::SL, Family::SU])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn main_route_matches_the_formulas(
        fam in family(),
        q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16]),
    ) {
        let g = make_group_q(fam, q).unwrap();
        for label in irr_plus(&g) {
            if is_degenerate(&g, &label) {
                continue;
            }
            let got = det_main(&g, &label).unwrap();
            prop_assert!(class_eq(&got.value, &expected(&g, &label)).unwrap(), "{} {}", label, got.value);
        }
    }

    #[test]
    fn routes_agree(fam in family(), q in prop::sample::select(vec![3u64, 5, 7, 9, 11, 13, 17, 19])) {
        let g = make_group_q(fam, q).unwrap();
        let report = cross_check(&g);
        prop_assert!(report.all_agree(), "{:?}", report.entries.iter().filter(|e| !e.verdict.is_ok()).collect::<Vec<_>>());
    }
}
