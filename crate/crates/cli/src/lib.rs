//! Records and renderers behind the `orthodet` command.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use orthodet::chartab::{self, CharKind, CharLabel, FieldDesc, RangeMode};
use orthodet::cyclo::SquareClass;
use orthodet::detengine::{self, cross_check_config, DetResult, Verdict};
use orthodet::groups::{Family, GroupSpec};
use orthodet::oracle::{verify_character_with, Effort, OracleConfig, OracleVerdict};
use orthodet::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldJson {
    Q,
    #[serde(rename = "theta")]
    Theta {
        m: u64,
        j: u64,
    },
}

impl From<FieldDesc> for FieldJson {
    fn from(f: FieldDesc) -> Self {
        match f {
            FieldDesc::Rational => FieldJson::Q,
            FieldDesc::RealCyclotomic { m, j } => FieldJson::Theta { m, j },
        }
    }
}

/// A square class: a squarefree integer, or an element written in the power
/// basis of `theta(conductor, 1)` with coefficients as `"n/d"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DetJson {
    Rational { value: i64 },
    FieldElement { conductor: u64, coeffs: Vec<String> },
}

impl DetJson {
    pub fn from_class(c: &SquareClass) -> Result<DetJson> {
        if let Some(n) = detengine::rational_class(c) {
            let value = n
                .to_i64()
                .ok_or_else(|| Error::Capacity(format!("class {n} exceeds 64 bits")))?;
            return Ok(DetJson::Rational { value });
        }
        let e = c.rep();
        Ok(DetJson::FieldElement {
            conductor: e.field().conductor(),
            coeffs: e
                .coeffs()
                .iter()
                .map(|r| format!("{}/{}", r.numer(), r.denom()))
                .collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub family: String,
    pub q: u64,
    pub kind: String,
    pub u: Option<u64>,
    pub degree: u64,
    pub field: FieldJson,
    pub det: Option<DetJson>,
    pub display: Option<String>,
    pub route: Option<String>,
    pub degenerate: bool,
}

fn display_of(g: &GroupSpec, label: &CharLabel, det: &DetJson) -> String {
    let q = g.q();
    let delta_kind = match g.family() {
        Family::SL => CharKind::St,
        Family::SU => CharKind::Rt,
    };
    match (det, label.u) {
        (DetJson::FieldElement { .. }, Some(u)) if label.kind == delta_kind && q % 2 == 1 => {
            format!("{q}*(2 - theta({},{}))", q - 1, 2 * u)
        }
        (DetJson::Rational { value }, _) => value.to_string(),
        (DetJson::FieldElement { conductor, coeffs }, _) => {
            let mut s = String::new();
            for (i, c) in coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.starts_with("0/"))
            {
                if !s.is_empty() {
                    s.push_str(" + ");
                }
                match i {
                    0 => write!(s, "{c}"),
                    1 => write!(s, "({c})*theta({conductor},1)"),
                    _ => write!(s, "({c})*theta({conductor},1)^{i}"),
                }
                .expect("string write");
            }
            s
        }
    }
}

fn record(
    g: &GroupSpec,
    label: &CharLabel,
    det: Option<&DetResult>,
    mode: RangeMode,
) -> Result<OutputRecord> {
    let info = chartab::char_info_with(g, label, mode)?;
    let det_json = det.map(|d| DetJson::from_class(&d.value)).transpose()?;
    Ok(OutputRecord {
        family: g.family().to_string(),
        q: g.q(),
        kind: label.kind.ident().to_string(),
        u: label.u,
        degree: info.degree,
        field: info.field.into(),
        display: det_json.as_ref().map(|d| display_of(g, label, d)),
        det: det_json,
        route: det.map(|d| d.route.to_string()),
        degenerate: info.degenerate,
    })
}

/// The record for one label; degenerate and invalid labels are errors.
pub fn det_record(g: &GroupSpec, label: &CharLabel, mode: RangeMode) -> Result<OutputRecord> {
    chartab::validate(g, label, mode)?;
    if !chartab::kind_in_irr_plus(g, label.kind) {
        return Err(Error::Validity(format!(
            "{} is not an even-degree indicator-+ character of {}3({})",
            label.kind,
            g.family(),
            g.q()
        )));
    }
    if chartab::is_degenerate(g, label) {
        return Err(Error::Degenerate(format!(
            "{label}: 2u ≡ 0 mod q - 1 makes the torus character real; \
             the determinant of this case is an open question and is not computed"
        )));
    }
    let d = detengine::det_main(g, label)?;
    record(g, label, Some(&d), mode)
}

/// One record per label of the table, degenerate labels without a value.
pub fn table_records(g: &GroupSpec, mode: RangeMode) -> Result<Vec<OutputRecord>> {
    chartab::irr_plus_with(g, mode, false)
        .iter()
        .map(|l| {
            if chartab::is_degenerate(g, l) {
                record(g, l, None, mode)
            } else {
                let d = detengine::det_main(g, l)?;
                record(g, l, Some(&d), mode)
            }
        })
        .collect()
}

pub fn to_json(records: &[OutputRecord]) -> String {
    serde_json::to_string_pretty(records).expect("records serialize")
}

pub fn to_csv(records: &[OutputRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "family", "q", "kind", "u", "degree", "field", "det", "route",
    ])
    .expect("csv write");
    for r in records {
        w.write_record([
            r.family.clone(),
            r.q.to_string(),
            r.kind.clone(),
            r.u.map(|u| u.to_string()).unwrap_or_default(),
            r.degree.to_string(),
            field_text(&r.field),
            r.display.clone().unwrap_or_default(),
            r.route.clone().unwrap_or_default(),
        ])
        .expect("csv write");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("utf-8")
}

fn field_text(f: &FieldJson) -> String {
    match f {
        FieldJson::Q => "Q".into(),
        FieldJson::Theta { m, j } => format!("Q(theta({m},{j}))"),
    }
}

pub fn to_text(records: &[OutputRecord]) -> String {
    let rows: Vec<[String; 6]> = records
        .iter()
        .map(|r| {
            let label = match r.u {
                Some(u) => format!("{}({u})", r.kind),
                None => r.kind.clone(),
            };
            [
                format!("{}3({})", r.family, r.q),
                label,
                r.degree.to_string(),
                field_text(&r.field),
                r.display.clone().unwrap_or_else(|| "degenerate".into()),
                r.route.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let header = ["group", "char", "degree", "field", "det", "route"];
    let widths: Vec<usize> = (0..6)
        .map(|i| {
            rows.iter()
                .map(|r| r[i].chars().count())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&header.map(String::from)) + "\n";
    for r in &rows {
        out += &line(r);
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Match,
    Mismatch,
    Undecided,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub family: String,
    pub q: u64,
    pub label: String,
    pub check: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub matched: usize,
    pub mismatched: usize,
    pub undecided: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub effort: String,
    pub counts: Counts,
    pub results: Vec<CheckResult>,
}

impl VerifySummary {
    pub fn exit_code(&self) -> u8 {
        if self.counts.mismatched > 0 {
            2
        } else if self.counts.undecided > 0 {
            3
        } else {
            0
        }
    }
}

fn cross_status(v: &Verdict) -> Status {
    match v {
        Verdict::Agree => Status::Match,
        Verdict::Disagree => Status::Mismatch,
        Verdict::Undecided(_) | Verdict::Failed(_) => Status::Undecided,
        Verdict::Skipped(_) => Status::Skipped,
    }
}

fn oracle_status(v: &OracleVerdict) -> Status {
    match v {
        OracleVerdict::Match => Status::Match,
        OracleVerdict::Mismatch => Status::Mismatch,
        OracleVerdict::Undecided(_) => Status::Undecided,
        OracleVerdict::Skipped(_) => Status::Skipped,
    }
}

/// Runs the route cross-check and every applicable oracle on each group.
pub fn verify(
    groups: &[GroupSpec],
    effort: Effort,
    cfg: &OracleConfig,
    mode: RangeMode,
) -> VerifySummary {
    let mut results = Vec::new();
    for g in groups {
        let fam = g.family().to_string();
        for e in cross_check_config(g, mode, &cfg.square).entries {
            results.push(CheckResult {
                family: fam.clone(),
                q: g.q(),
                label: e.label.to_string(),
                check: "cross_check".into(),
                status: cross_status(&e.verdict),
                detail: e.verdict.to_string(),
            });
        }
        let labels = chartab::irr_plus_with(g, mode, false);
        let oracle: Vec<CheckResult> = labels
            .par_iter()
            .map(|l| {
                let r = verify_character_with(g, l, effort, cfg);
                let mut detail = r.verdict.to_string();
                if !r.comparison_field.is_empty() {
                    write!(detail, " at the {}-level", r.comparison_field).expect("string write");
                }
                CheckResult {
                    family: fam.clone(),
                    q: g.q(),
                    label: l.to_string(),
                    check: "oracle".into(),
                    status: oracle_status(&r.verdict),
                    detail,
                }
            })
            .collect();
        results.extend(oracle);
    }
    let mut counts = Counts::default();
    for r in &results {
        match r.status {
            Status::Match => counts.matched += 1,
            Status::Mismatch => counts.mismatched += 1,
            Status::Undecided => counts.undecided += 1,
            Status::Skipped => counts.skipped += 1,
        }
    }
    VerifySummary {
        effort: effort.to_string(),
        counts,
        results,
    }
}
