use std::process::{Command, Output};

use orthodet_cli::{CheckResult, Counts, DetJson, FieldJson, OutputRecord, Status, VerifySummary};
use proptest::prelude::*;

fn orthodet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthodet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_records(out: &Output) -> Vec<OutputRecord> {
    serde_json::from_slice(&out.stdout).expect("valid JSON records")
}

fn rational(r: &OutputRecord) -> Option<i64> {
    match r.det {
        Some(DetJson::Rational { value }) => Some(value),
        _ => None,
    }
}

#[test]
fn det_examples() {
    for (args, expected) in [
        (
            vec![
                "det", "--family", "SL", "--q", "7", "--char", "st", "--u", "1",
            ],
            21,
        ),
        (vec!["det", "--family", "SL", "--q", "2", "--char", "qs"], 7),
        (
            vec!["det", "--family", "SU", "--q", "4", "--char", "qcubed"],
            65,
        ),
    ] {
        let mut a = args.clone();
        a.extend(["--format", "json"]);
        let out = orthodet(&a);
        assert!(out.status.success(), "{args:?}");
        let recs = json_records(&out);
        assert_eq!(recs.len(), 1);
        assert_eq!(rational(&recs[0]), Some(expected), "{args:?}");
    }
}

#[test]
fn tables() {
    let out = orthodet(&["table", "--family", "SL", "--q", "2", "--format", "json"]);
    let recs = json_records(&out);
    assert_eq!(
        recs.iter().map(rational).collect::<Vec<_>>(),
        vec![Some(7), Some(21)]
    );

    let out = orthodet(&["table", "--family", "SU", "--q", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,q,kind,u,degree,field,det,route"));
    assert_eq!(lines.next(), Some("SU,2,qcubed,,8,Q,1,closed_form"));
    assert_eq!(lines.next(), None);

    let out = orthodet(&["table", "--family", "SL", "--q", "7", "--format", "json"]);
    let recs = json_records(&out);
    assert_eq!(recs.len(), 13);
    let st = recs
        .iter()
        .find(|r| r.kind == "st" && r.u == Some(1))
        .unwrap();
    assert_eq!(st.field, FieldJson::Theta { m: 6, j: 1 });

    let out = orthodet(&["table", "--family", "SU", "--q", "5", "--format", "json"]);
    let recs = json_records(&out);
    let degenerate: Vec<_> = recs.iter().filter(|r| r.degenerate).collect();
    assert_eq!(degenerate.len(), 1);
    assert!(degenerate[0].det.is_none());
}

#[test]
fn irrational_determinants_are_exact() {
    let out = orthodet(&[
        "det", "--family", "SL", "--q", "11", "--char", "st", "--u", "1", "--format", "json",
    ]);
    let r = &json_records(&out)[0];
    assert_eq!(
        r.det,
        Some(DetJson::FieldElement {
            conductor: 5,
            coeffs: vec!["22/1".into(), "-11/1".into()]
        })
    );
    assert_eq!(r.display.as_deref(), Some("11*(2 - theta(10,2))"));
}

#[test]
fn invalid_and_degenerate_inputs_exit_with_one() {
    for args in [
        vec![
            "det", "--family", "SU", "--q", "3", "--char", "rt", "--u", "1",
        ],
        vec![
            "det", "--family", "SL", "--q", "7", "--char", "st", "--u", "3",
        ],
        vec!["det", "--family", "SL", "--q", "6", "--char", "qs"],
        vec!["det", "--family", "SL", "--q", "7", "--char", "st"],
        vec![
            "det", "--family", "SL", "--q", "64", "--char", "qs", "--max-q", "32",
        ],
    ] {
        let out = orthodet(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = orthodet(&[
        "det", "--family", "SU", "--q", "3", "--char", "rt", "--u", "1",
    ]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("open question"));
}

#[test]
fn verification_runs() {
    let out = orthodet(&["verify", "--q", "2,3,4", "--effort", "fast"]);
    assert_eq!(out.status.code(), Some(0));
    let s: VerifySummary = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(s.counts.mismatched + s.counts.undecided, 0);
    assert!(s.counts.matched > 0);

    let out = orthodet(&["verify", "--family", "SU", "--q", "5", "--effort", "slow"]);
    assert_eq!(out.status.code(), Some(0));
    let s: VerifySummary = serde_json::from_slice(&out.stdout).unwrap();
    assert!(s
        .results
        .iter()
        .any(|r| r.label == "rt(1)" && r.check == "oracle" && r.status == Status::Match));

    let out = orthodet(&["verify", "--q", "3", "--family", "SU"]);
    let s: VerifySummary = serde_json::from_slice(&out.stdout).unwrap();
    assert!(s.results.iter().any(|r| r.label == "rt(1)"
        && r.status == Status::Skipped
        && r.detail.contains("degenerate")));
}

fn status() -> impl Strategy<Value = Status> {
    prop::sample::select(vec![
        Status::Match,
        Status::Mismatch,
        Status::Undecided,
        Status::Skipped,
    ])
}

fn record() -> impl Strategy<Value = OutputRecord> {
    let field = prop_oneof![
        Just(FieldJson::Q),
        (1u64..200, 0u64..200).prop_map(|(m, j)| FieldJson::Theta { m, j }),
    ];
    let det = prop_oneof![
        Just(None),
        any::<i64>().prop_map(|value| Some(DetJson::Rational { value })),
        (
            1u64..120,
            prop::collection::vec((-1000i64..1000, 1i64..50), 1..8)
        )
            .prop_map(|(c, v)| {
                Some(DetJson::FieldElement {
                    conductor: c,
                    coeffs: v.into_iter().map(|(n, d)| format!("{n}/{d}")).collect(),
                })
            }),
    ];
    (
        prop::sample::select(vec!["SL", "SU"]),
        1u64..100_000,
        prop::sample::select(vec!["qs", "qcubed", "stprime", "st", "rt"]),
        prop::option::of(0u64..1000),
        any::<u64>(),
        field,
        det,
        prop::option::of("[ -~]{0,24}"),
        prop::option::of(prop::sample::select(vec![
            "closed_form",
            "borel",
            "permutation",
        ])),
        any::<bool>(),
    )
        .prop_map(
            |(family, q, kind, u, degree, field, det, display, route, degenerate)| OutputRecord {
                family: family.into(),
                q,
                kind: kind.into(),
                u,
                degree,
                field,
                det,
                display,
                route: route.map(String::from),
                degenerate,
            },
        )
}

proptest! {
    #[test]
    fn records_round_trip(recs in prop::collection::vec(record(), 0..6)) {
        let text = orthodet_cli::to_json(&recs);
        let back: Vec<OutputRecord> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, recs);
    }

    #[test]
    fn no_mismatch_exits_zero(statuses in prop::collection::vec(status(), 0..20)) {
        let results: Vec<CheckResult> = statuses
            .iter()
            .map(|&status| CheckResult {
                family: "SL".into(),
                q: 3,
                label: "qs".into(),
                check: "oracle".into(),
                status,
                detail: String::new(),
            })
            .collect();
        let count = |s: Status| statuses.iter().filter(|&&x| x == s).count();
        let summary = VerifySummary {
            effort: "fast".into(),
            counts: Counts {
                matched: count(Status::Match),
                mismatched: count(Status::Mismatch),
                undecided: count(Status::Undecided),
                skipped: count(Status::Skipped),
            },
            results,
        };
        let code = summary.exit_code();
        if count(Status::Mismatch) > 0 {
            prop_assert_eq!(code, 2);
        } else if count(Status::Undecided) > 0 {
            prop_assert_eq!(code, 3);
        } else {
            prop_assert_eq!(code, 0);
        }
    }
}
