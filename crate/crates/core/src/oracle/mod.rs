//! Explicit modules and invariant forms at small `q`, used to test the
//! determinant engine against independent computations.

mod linalg;
mod monomial;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::chartab::{harish_chandra, CharKind, CharLabel};
use crate::cyclo::{
    class_eq_cyclo_with, is_square_in_cyclo_with, squarefree_part, CycloElem, SquareClass,
    SquareConfig,
};
use crate::detengine::det_main;
use crate::error::{Error, Result};
use crate::groups::{coset_action, CosetAction, Family, GroupSpec, Stabilizer};

pub use linalg::{bareiss_det, cyclotomic_det, det_mod, hadamard_bits};
pub use monomial::{
    build_induced_rep, check_words, invariant_form, u_fixed_dim, GramForm, MonomialRep,
};

/// A permutation module on a coset space.
#[derive(Clone, Debug)]
pub struct PermModule {
    pub action: CosetAction,
}

impl PermModule {
    pub fn dim(&self) -> usize {
        self.action.len()
    }

    pub fn rep(&self) -> MonomialRep {
        MonomialRep::from_action(&self.action)
    }
}

pub fn build_perm_module(g: &GroupSpec, stab: Stabilizer, max_q: u64) -> Result<PermModule> {
    if g.q() > max_q {
        return Err(Error::Capacity(format!(
            "q = {} exceeds the oracle cap {max_q}",
            g.q()
        )));
    }
    Ok(PermModule {
        action: coset_action(g, stab)?,
    })
}

/// Gram determinant of the standard form on the complement of the all-ones
/// vector, in the basis `e_i - e_{i+1}`.
pub fn complement_gram_det(module: &PermModule) -> BigInt {
    let n = module.dim();
    let m = n.saturating_sub(1);
    let rows = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    BigInt::from(match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                })
                .collect()
        })
        .collect();
    bareiss_det(rows)
}

pub fn complement_gram_class(module: &PermModule) -> Result<SquareClass> {
    Ok(SquareClass::Rational(squarefree_part(
        &complement_gram_det(module),
    )?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Effort {
    #[default]
    Fast,
    Slow,
}

impl FromStr for Effort {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fast" => Ok(Effort::Fast),
            "slow" => Ok(Effort::Slow),
            other => Err(Error::Parameter(format!(
                "unknown effort '{other}' (expected fast or slow)"
            ))),
        }
    }
}

impl fmt::Display for Effort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Effort::Fast => "fast",
            Effort::Slow => "slow",
        })
    }
}

/// Size limits of the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub perm_max_q: u64,
    pub induced_max_q_fast: u64,
    pub induced_max_q_slow: u64,
    pub square: SquareConfig,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            perm_max_q: 13,
            induced_max_q_fast: 4,
            induced_max_q_slow: 5,
            square: SquareConfig::default(),
        }
    }
}

/// The observed determinant of an explicit model.
#[derive(Clone, Debug)]
pub enum Observed {
    Rational(SquareClass),
    /// A Gram determinant in `ℚ(μ_n)`.
    Cyclotomic(CycloElem),
}

impl fmt::Display for Observed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observed::Rational(c) => write!(f, "{c}"),
            Observed::Cyclotomic(e) => write!(f, "{e} in Q(mu_{})", e.order()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Match,
    Mismatch,
    Undecided(String),
    Skipped(String),
}

impl fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleVerdict::Match => write!(f, "match"),
            OracleVerdict::Mismatch => write!(f, "mismatch"),
            OracleVerdict::Undecided(r) => write!(f, "undecided ({r})"),
            OracleVerdict::Skipped(r) => write!(f, "skipped ({r})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub family: Family,
    pub q: u64,
    pub label: CharLabel,
    pub predicted: Option<SquareClass>,
    pub observed: Option<Observed>,
    pub comparison_field: String,
    pub verdict: OracleVerdict,
    pub notes: Vec<String>,
}

impl VerifyReport {
    fn skipped(g: &GroupSpec, label: &CharLabel, why: impl Into<String>) -> VerifyReport {
        VerifyReport {
            family: g.family(),
            q: g.q(),
            label: *label,
            predicted: None,
            observed: None,
            comparison_field: String::new(),
            verdict: OracleVerdict::Skipped(why.into()),
            notes: Vec::new(),
        }
    }
}

fn rational(c: &SquareClass) -> Result<BigInt> {
    crate::detengine::rational_class(c)
        .ok_or_else(|| Error::Contract(format!("class {c} is not rational")))
}

/// Verifies one label against the strongest available explicit model.
pub fn verify_character(g: &GroupSpec, label: &CharLabel, effort: Effort) -> VerifyReport {
    verify_character_with(g, label, effort, &OracleConfig::default())
}

pub fn verify_character_with(
    g: &GroupSpec,
    label: &CharLabel,
    effort: Effort,
    cfg: &OracleConfig,
) -> VerifyReport {
    match verify_inner(g, label, effort, cfg) {
        Ok(r) => r,
        Err(Error::Undecided(why)) => {
            let mut r = VerifyReport::skipped(g, label, "");
            r.verdict = OracleVerdict::Undecided(why);
            r
        }
        Err(
            e @ (Error::Capacity(_)
            | Error::Degenerate(_)
            | Error::Unsupported(_)
            | Error::Validity(_)
            | Error::Contract(_)
            | Error::Parameter(_)),
        ) => VerifyReport::skipped(g, label, e.to_string()),
        Err(e) => {
            let mut r = VerifyReport::skipped(g, label, "");
            r.verdict = OracleVerdict::Undecided(e.to_string());
            r
        }
    }
}

fn verify_inner(
    g: &GroupSpec,
    label: &CharLabel,
    effort: Effort,
    cfg: &OracleConfig,
) -> Result<VerifyReport> {
    let even = g.q().is_multiple_of(2);
    match (g.family(), label.kind) {
        (Family::SL, CharKind::Qs) => perm_check(g, label, cfg, |g, cfg| {
            let m = build_perm_module(g, Stabilizer::P, cfg.perm_max_q)?;
            Ok((
                complement_gram_class(&m)?,
                format!("complement of 1 in the {}-point module on G/P", m.dim()),
            ))
        }),
        (Family::SU, CharKind::QCubed) if even => perm_check(g, label, cfg, |g, cfg| {
            let m = build_perm_module(g, Stabilizer::B, cfg.perm_max_q)?;
            Ok((
                complement_gram_class(&m)?,
                format!("complement of 1 in the {}-point module on G/B", m.dim()),
            ))
        }),
        (Family::SL, CharKind::QCubed) if even => perm_check(g, label, cfg, |g, cfg| {
            let b = build_perm_module(g, Stabilizer::B, cfg.perm_max_q)?;
            let p = build_perm_module(g, Stabilizer::P, cfg.perm_max_q)?;
            let db = complement_gram_det(&b);
            let dp = complement_gram_det(&p);
            let value = squarefree_part(&(db * &dp * &dp))?;
            Ok((
                SquareClass::Rational(value),
                "G/B complement times the square of the G/P complement".to_string(),
            ))
        }),
        (Family::SL, CharKind::St) | (Family::SU, CharKind::Rt) => {
            induced_check(g, label, effort, cfg)
        }
        _ => Ok(VerifyReport::skipped(g, label, "no explicit model")),
    }
}

fn perm_check(
    g: &GroupSpec,
    label: &CharLabel,
    cfg: &OracleConfig,
    observe: impl Fn(&GroupSpec, &OracleConfig) -> Result<(SquareClass, String)>,
) -> Result<VerifyReport> {
    let predicted = det_main(g, label)?.value;
    let (observed, note) = observe(g, cfg)?;
    let verdict = if rational(&predicted)? == rational(&observed)? {
        OracleVerdict::Match
    } else {
        OracleVerdict::Mismatch
    };
    Ok(VerifyReport {
        family: g.family(),
        q: g.q(),
        label: *label,
        predicted: Some(predicted),
        observed: Some(Observed::Rational(observed)),
        comparison_field: "Q".into(),
        verdict,
        notes: vec![note],
    })
}

fn induced_check(
    g: &GroupSpec,
    label: &CharLabel,
    effort: Effort,
    cfg: &OracleConfig,
) -> Result<VerifyReport> {
    let cap = match effort {
        Effort::Fast => cfg.induced_max_q_fast,
        Effort::Slow => cfg.induced_max_q_slow,
    };
    if g.q() > cap {
        return Err(Error::Capacity(format!(
            "induced module at q = {} exceeds the {effort} cap q ≤ {cap}",
            g.q()
        )));
    }
    let predicted = det_main(g, label)?;
    let hc = harish_chandra(g, label)?;
    let pair = hc
        .complex_pairs
        .first()
        .ok_or_else(|| Error::Unsupported("no complex torus character".into()))?;
    let rep = build_induced_rep(g, &pair.theta, usize::MAX)?;
    let k = g.generators().len();
    let words: Vec<Vec<usize>> = (0..k)
        .flat_map(|a| (0..k).map(move |b| vec![a, b]))
        .collect();
    check_words(g, &rep, &words)?;
    let form = invariant_form(&rep)?;
    let mut notes = vec![
        format!("Ind_B^G({}) of dimension {}", pair.theta, rep.dim()),
        format!("invariant symmetric forms: dimension {}", form.solution_dim),
        format!("U-fixed dimension {}", u_fixed_dim(&rep)),
    ];
    if form.solution_dim != 1 {
        notes.push("solution space is not one-dimensional".into());
        return Ok(VerifyReport {
            family: g.family(),
            q: g.q(),
            label: *label,
            predicted: Some(predicted.value),
            observed: None,
            comparison_field: String::new(),
            verdict: OracleVerdict::Undecided(
                "module is not absolutely irreducible of real type".into(),
            ),
            notes,
        });
    }
    if !form.is_invariant(&rep) {
        return Err(Error::Consistency("computed form is not invariant".into()));
    }
    let det = form.determinant()?;
    if det.is_zero() {
        return Err(Error::Consistency("invariant form is degenerate".into()));
    }
    let n = rep.order;
    let pred_l = CycloElem::from_real(&predicted.value.rep(), n.max(1))?;
    let verdict = if class_eq_cyclo_with(&det, &pred_l, &cfg.square)? {
        OracleVerdict::Match
    } else {
        OracleVerdict::Mismatch
    };
    if !is_square_in_cyclo_with(&pred_l, &cfg.square)?.is_square() {
        notes.push("predicted class is nontrivial in the comparison field".into());
    }
    Ok(VerifyReport {
        family: g.family(),
        q: g.q(),
        label: *label,
        predicted: Some(predicted.value),
        observed: Some(Observed::Cyclotomic(det)),
        comparison_field: format!("Q(mu_{n})"),
        verdict,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::make_group_q;

    #[test]
    fn complement_determinants() {
        let sl2 = make_group_q(Family::SL, 2).unwrap();
        let p = build_perm_module(&sl2, Stabilizer::P, 13).unwrap();
        assert_eq!(complement_gram_det(&p), BigInt::from(7));
        let b = build_perm_module(&sl2, Stabilizer::B, 13).unwrap();
        assert_eq!(complement_gram_det(&b), BigInt::from(21));
        let su2 = make_group_q(Family::SU, 2).unwrap();
        let m = build_perm_module(&su2, Stabilizer::B, 13).unwrap();
        assert_eq!(
            complement_gram_class(&m).unwrap().rational_value(),
            Some(&BigInt::from(1))
        );
    }

    #[test]
    fn small_verifications() {
        let sl2 = make_group_q(Family::SL, 2).unwrap();
        assert_eq!(
            verify_character(&sl2, &CharLabel::qs(), Effort::Fast).verdict,
            OracleVerdict::Match
        );
        assert_eq!(
            verify_character(&sl2, &CharLabel::qcubed(), Effort::Fast).verdict,
            OracleVerdict::Match
        );
        let su4 = make_group_q(Family::SU, 4).unwrap();
        assert_eq!(
            verify_character(&su4, &CharLabel::qcubed(), Effort::Fast).verdict,
            OracleVerdict::Match
        );
        let sl7 = make_group_q(Family::SL, 7).unwrap();
        assert!(matches!(
            verify_character(&sl7, &CharLabel::rt(1), Effort::Fast).verdict,
            OracleVerdict::Skipped(_)
        ));
        assert!(matches!(
            verify_character(&sl7, &CharLabel::st(1), Effort::Fast).verdict,
            OracleVerdict::Skipped(_)
        ));
    }
}
