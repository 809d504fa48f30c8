use orthodet::gf::make_field;
use orthodet::groups::{
    coset_action, count_isotropic_points, enumerate_unipotent_class_counts, is_member,
    make_group_q, unipotent_class_counts, CosetAction, Family, Stabilizer,
};
use proptest::prelude::*;

const QS: [u64; 6] = [2, 3, 4, 5, 7, 8];

#[test]
fn orders_match_the_closed_formula() {
    for fam in [Family::SL, Family::SU] {
        for q in QS {
            let g = make_group_q(fam, q).unwrap();
            let e = g.epsilon() as i128;
            let q = q as i128;
            let expected = q.pow(3) * (q * q - 1) * (q.pow(3) - e);
            assert_eq!(g.order() as i128, expected, "{fam:?} q={q}");
        }
    }
}

#[test]
fn generators_are_members() {
    for fam in [Family::SL, Family::SU] {
        for q in QS {
            let g = make_group_q(fam, q).unwrap();
            for s in g.generators() {
                assert!(is_member(&g, s), "{fam:?} q={q}");
            }
        }
    }
}

#[test]
fn coset_spaces_have_the_right_size() {
    for fam in [Family::SL, Family::SU] {
        for q in [2, 3, 4, 5] {
            let g = make_group_q(fam, q).unwrap();
            for stab in [Stabilizer::B, Stabilizer::P] {
                if fam == Family::SU && stab == Stabilizer::P {
                    continue;
                }
                let a = coset_action(&g, stab).unwrap();
                assert_eq!(a.len() as u64, CosetAction::expected_len(fam, stab, q));
                assert!(a.perms_are_bijections());
            }
        }
    }
}

#[test]
fn isotropic_points_of_the_hermitian_curve() {
    for q in [2, 3, 4, 5] {
        let g = make_group_q(Family::SU, q).unwrap();
        assert_eq!(count_isotropic_points(&g), q * q * q + 1);
    }
}

#[test]
fn unipotent_counts_match_enumeration() {
    for fam in [Family::SL, Family::SU] {
        for q in [2, 3, 4, 5] {
            let g = make_group_q(fam, q).unwrap();
            let closed = unipotent_class_counts(&g);
            assert_eq!(closed, enumerate_unipotent_class_counts(&g).unwrap());
            assert_eq!(closed.total(), q * q * q);
        }
    }
}

fn field_params() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(vec![
        (2u64, 1u32),
        (2, 2),
        (2, 3),
        (3, 1),
        (3, 2),
        (5, 1),
        (7, 1),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms((p, f) in field_params(), a in 0u64..4096, b in 0u64..4096, c in 0u64..4096) {
        let k = make_field(p, f, 2).unwrap();
        let n = k.size();
        let (a, b, c) = (
            k.elem_from_code(a % n).unwrap(),
            k.elem_from_code(b % n).unwrap(),
            k.elem_from_code(c % n).unwrap(),
        );
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.mul(a, k.mul(b, c)), k.mul(k.mul(a, b), c));
        prop_assert_eq!(k.add(a, k.neg(a)), k.zero());
        if !a.is_zero() {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), k.one());
        }
    }

    #[test]
    fn products_of_generators_stay_in_the_group(
        fam in prop::sample::select(vec![Family::SL, Family::SU]),
        q in prop::sample::select(vec![2u64, 3, 4, 5, 7]),
        word in prop::collection::vec(0usize..16, 1..12),
    ) {
        let g = make_group_q(fam, q).unwrap();
        let gens = g.generators();
        let x = word.iter().fold(g.identity(), |acc, &i| g.mul(&acc, &gens[i % gens.len()]));
        prop_assert!(is_member(&g, &x));
        let xi = g.inv(&x).unwrap();
        prop_assert_eq!(g.mul(&x, &xi), g.identity());
    }
}
