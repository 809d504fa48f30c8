//! Orthogonal determinants of the characters in the indicator-`+` slice.
//!
//! Three routes are available: the closed-form table ([`det_main`]), the
//! Borel route ([`det_borel`]) composing `det(χ_T)` from complex torus pairs
//! with the `p`-group contribution of `χ_U`, and the permutation route
//! ([`det_permutation`]) through the permutation modules on `G/P` and `G/B`.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::chartab::{self, harish_chandra, CharInfo, CharKind, CharLabel, FieldDesc, RangeMode};
use crate::cyclo::{
    class_eq_with, class_mul, delta, prime_power_class, square_class, RealField, SquareClass,
    SquareConfig,
};
use crate::error::{Error, Result};
use crate::groups::{Family, GroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    ClosedForm,
    Borel,
    Permutation,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::ClosedForm => "closed_form",
            Route::Borel => "borel",
            Route::Permutation => "permutation",
        })
    }
}

#[derive(Clone, Debug)]
pub struct DetResult {
    pub label: CharLabel,
    pub field: FieldDesc,
    pub value: SquareClass,
    pub route: Route,
    pub notes: Vec<String>,
}

/// An orthogonal character written as `Σ a_i χ_i^{(+)} + Σ b_j 2χ_j^{(-)} + Σ c_k (χ_k^{(0)} + conj)`.
#[derive(Clone, Debug, Default)]
pub struct OrthoDecomp {
    /// Indicator-`+` constituents: a tag, the degree and the determinant class.
    pub plus_part: Vec<(String, u64, SquareClass)>,
    pub minus_doubles: u64,
    /// Complex pairs: the degree of one member and `(m, j)` with `L = ℚ(μ_m^j)`.
    pub complex_pairs: Vec<(u64, (u64, u64))>,
}

impl OrthoDecomp {
    pub fn is_stable(&self) -> bool {
        self.plus_part.iter().all(|(_, d, _)| d % 2 == 0)
    }

    /// The determinant as a class of `K`.
    pub fn determinant(&self, k: &RealField) -> Result<SquareClass> {
        if let Some((tag, d, _)) = self.plus_part.iter().find(|(_, d, _)| d % 2 == 1) {
            return Err(Error::Contract(format!(
                "constituent {tag} has odd degree {d}; the character is not orthogonally stable"
            )));
        }
        let mut acc = one_class(k);
        for (_, _, c) in &self.plus_part {
            acc = class_mul(&acc, &c.to_field(k)?)?;
        }
        for _ in 0..self.minus_doubles {
            acc = class_mul(&acc, &det_minus_double(k))?;
        }
        for &(deg, (m, j)) in &self.complex_pairs {
            let c = det_complex_pair(deg, (m, j))?;
            let mapped = c.to_field(k).map_err(|_| {
                Error::Consistency(format!("Q(theta({m},{j})) is not contained in {k}"))
            })?;
            acc = class_mul(&acc, &mapped)?;
        }
        Ok(acc)
    }
}

fn one_class(k: &RealField) -> SquareClass {
    square_class(k, &k.one()).expect("1 is a unit")
}

fn int_class(k: &RealField, n: i64) -> Result<SquareClass> {
    square_class(k, &k.from_int(n))
}

/// `δ^{degree}` for a complex pair with `L = ℚ(μ_m^j)`, as a class of `ℚ(ϑ_m^{(j)})`.
pub fn det_complex_pair(degree: u64, l: (u64, u64)) -> Result<SquareClass> {
    let (m, j) = l;
    let k = RealField::from_theta(m, j as i64)?;
    let d = delta(m, j as i64)?;
    if degree.is_multiple_of(2) {
        return Ok(one_class(&k));
    }
    square_class(&k, &d.to_field(&k)?)
}

/// Determinant of a summand `2χ^{(-)}`.
pub fn det_minus_double(k: &RealField) -> SquareClass {
    one_class(k)
}

fn info(g: &GroupSpec, label: &CharLabel) -> Result<CharInfo> {
    let info = chartab::char_info_with(g, label, RangeMode::Unitary)?;
    if !info.in_irr_plus {
        return Err(Error::Contract(format!(
            "{label} is not an even-degree indicator-+ character of {}3({})",
            g.family(),
            g.q()
        )));
    }
    Ok(info)
}

fn require_odd(g: &GroupSpec, what: &str) -> Result<()> {
    if g.q().is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "{what} requires odd q (q = {})",
            g.q()
        )));
    }
    Ok(())
}

/// Class of `p^{χ_U(1)/(p-1)}` with `χ_U(1) = χ(1) - χ_T(1)`.
pub fn det_chi_u(g: &GroupSpec, label: &CharLabel) -> Result<SquareClass> {
    require_odd(g, "the p-group route")?;
    if label.kind == CharKind::Qs {
        return Err(Error::Unsupported(
            "qs is handled by the permutation route".into(),
        ));
    }
    let info = info(g, label)?;
    let chi_u = info.degree - info.hc_degree;
    let p = g.p();
    if chi_u % (p - 1) != 0 {
        return Err(Error::Consistency(format!(
            "p - 1 = {} does not divide χ_U(1) = {chi_u}",
            p - 1
        )));
    }
    let class = prime_power_class(p, chi_u / (p - 1));
    let of_q = prime_power_class(p, g.f() as u64);
    if class.rational_value() != of_q.rational_value() {
        return Err(Error::Consistency(format!(
            "class of p^(χ_U(1)/(p-1)) = {class} differs from the class of q = {of_q}"
        )));
    }
    Ok(class)
}

/// `det(χ_T)` as a class of `ℚ(χ)`, with a note per composed pair.
pub fn det_chi_t(g: &GroupSpec, label: &CharLabel) -> Result<(SquareClass, Vec<String>)> {
    require_odd(g, "the torus route")?;
    let info = info(g, label)?;
    let k = info.field.real_field()?;
    let r = harish_chandra(g, label)?;
    if r.degenerate {
        return Err(Error::Degenerate(format!(
            "χ_T of {label} contains real torus characters ({} of them)",
            r.real_chars.len()
        )));
    }
    let mut notes = Vec::new();
    if r.complex_pairs.is_empty() {
        notes.push("χ_T = 0".to_string());
    }
    let decomp = OrthoDecomp {
        complex_pairs: r
            .complex_pairs
            .iter()
            .map(|p| {
                notes.push(format!(
                    "pair {{{}, {}}} with delta({}, {})",
                    p.theta, p.conj, p.field.0, p.field.1
                ));
                (1, p.field)
            })
            .collect(),
        ..OrthoDecomp::default()
    };
    Ok((decomp.determinant(&k)?, notes))
}

pub fn det_borel(g: &GroupSpec, label: &CharLabel) -> Result<DetResult> {
    let info = info(g, label)?;
    let k = info.field.real_field()?;
    let u = det_chi_u(g, label)?;
    let (t, mut notes) = det_chi_t(g, label)?;
    notes.push(format!("χ_U(1) = {}", info.degree - info.hc_degree));
    Ok(DetResult {
        label: *label,
        field: info.field,
        value: class_mul(&t, &u.to_field(&k)?)?,
        route: Route::Borel,
        notes,
    })
}

pub fn det_permutation(g: &GroupSpec, label: &CharLabel) -> Result<DetResult> {
    let q = g.q() as i64;
    let k = RealField::rational();
    let (value, note) = match (g.family(), label.kind) {
        (Family::SL, CharKind::Qs) => (int_class(&k, q * q + q + 1)?, "1_P^G = 1 + qs"),
        (Family::SU, CharKind::QCubed) if q % 2 == 0 => {
            (int_class(&k, q * q * q + 1)?, "1_B^G = 1 + qcubed")
        }
        (Family::SL, CharKind::QCubed) if q % 2 == 0 => {
            let index = int_class(&k, (q + 1) * (q * q + q + 1))?;
            let qs = int_class(&k, q * q + q + 1)?;
            (
                class_mul(&index, &class_mul(&qs, &qs)?)?,
                "1_B^G = 1 + 2 qs + qcubed",
            )
        }
        _ => {
            return Err(Error::Parameter(format!(
                "no permutation route for {label} of {}3({q})",
                g.family()
            )))
        }
    };
    Ok(DetResult {
        label: *label,
        field: FieldDesc::Rational,
        value,
        route: Route::Permutation,
        notes: vec![note.to_string()],
    })
}

/// The closed-form determinant.
pub fn det_main(g: &GroupSpec, label: &CharLabel) -> Result<DetResult> {
    let info = info(g, label)?;
    let k = info.field.real_field()?;
    let q = g.q() as i64;
    let odd = q % 2 == 1;
    let qdelta = |u: u64, note: &mut Vec<String>| -> Result<SquareClass> {
        let d = delta(g.q() - 1, u as i64).map_err(|_| {
            Error::Degenerate(format!(
                "{label} of {}3({q}): 2u ≡ 0 mod q - 1, so q(2 - theta(q-1, 2u)) = 0 has no square class",
                g.family()
            ))
        })?;
        note.push(format!("q*(2 - theta({}, {}))", q - 1, 2 * u));
        square_class(&k, &(&k.from_int(q) * &d.to_field(&k)?))
    };
    let mut notes = Vec::new();
    let value = match (g.family(), odd, label.kind, label.u) {
        (Family::SL, true, CharKind::Qs, _) => int_class(&k, q * q + q + 1)?,
        (Family::SL, true, CharKind::StPrime, _) => int_class(&k, 3 * q)?,
        (Family::SL, true, CharKind::St, Some(u)) => qdelta(u, &mut notes)?,
        (Family::SL, true, CharKind::Rt, _) => int_class(&k, q)?,
        (Family::SU, true, CharKind::StPrime | CharKind::St, _) => int_class(&k, q)?,
        (Family::SU, true, CharKind::Rt, Some(u)) => qdelta(u, &mut notes)?,
        (Family::SL, false, CharKind::Qs, _) => int_class(&k, q * q + q + 1)?,
        (Family::SL, false, CharKind::QCubed, _) => int_class(&k, (q + 1) * (q * q + q + 1))?,
        (Family::SU, false, CharKind::QCubed, _) => int_class(&k, q * q * q + 1)?,
        _ => return Err(Error::Contract(format!("no closed form for {label}"))),
    };
    Ok(DetResult {
        label: *label,
        field: info.field,
        value,
        route: Route::ClosedForm,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Agree,
    Disagree,
    Undecided(String),
    Skipped(String),
    Failed(String),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Agree | Verdict::Skipped(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Agree => write!(f, "agree"),
            Verdict::Disagree => write!(f, "disagree"),
            Verdict::Undecided(r) => write!(f, "undecided ({r})"),
            Verdict::Skipped(r) => write!(f, "skipped ({r})"),
            Verdict::Failed(r) => write!(f, "failed ({r})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CrossCheckEntry {
    pub label: CharLabel,
    pub main: Option<DetResult>,
    pub other: Option<DetResult>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub family: Family,
    pub q: u64,
    pub entries: Vec<CrossCheckEntry>,
}

impl CrossCheckReport {
    pub fn all_agree(&self) -> bool {
        self.entries.iter().all(|e| e.verdict.is_ok())
    }

    pub fn compared(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.verdict == Verdict::Agree)
            .count()
    }
}

fn compare(a: &DetResult, b: &DetResult, cfg: &SquareConfig) -> Verdict {
    match class_eq_with(&a.value, &b.value, cfg) {
        Ok(true) => Verdict::Agree,
        Ok(false) => Verdict::Disagree,
        Err(Error::Undecided(r)) => Verdict::Undecided(r),
        Err(e) => Verdict::Failed(e.to_string()),
    }
}

fn check_label(g: &GroupSpec, label: &CharLabel, cfg: &SquareConfig) -> CrossCheckEntry {
    let skip = |why: String| CrossCheckEntry {
        label: *label,
        main: None,
        other: None,
        verdict: Verdict::Skipped(why),
    };
    if chartab::is_degenerate(g, label) {
        return skip("degenerate parameter".into());
    }
    let main = match det_main(g, label) {
        Ok(r) => r,
        Err(e) => {
            return CrossCheckEntry {
                label: *label,
                main: None,
                other: None,
                verdict: Verdict::Failed(e.to_string()),
            }
        }
    };
    let other = match (g.q() % 2, label.kind) {
        (_, CharKind::Qs) | (0, CharKind::QCubed) => det_permutation(g, label),
        (0, _) => return skip("no second route for even q".into()),
        _ => det_borel(g, label),
    };
    match other {
        Ok(o) => CrossCheckEntry {
            label: *label,
            verdict: compare(&main, &o, cfg),
            main: Some(main),
            other: Some(o),
        },
        Err(e) => CrossCheckEntry {
            label: *label,
            main: Some(main),
            other: None,
            verdict: Verdict::Failed(e.to_string()),
        },
    }
}

/// Compares the closed form with the second available route for every label.
pub fn cross_check(g: &GroupSpec) -> CrossCheckReport {
    cross_check_with(g, RangeMode::Table)
}

pub fn cross_check_with(g: &GroupSpec, mode: RangeMode) -> CrossCheckReport {
    cross_check_config(g, mode, &SquareConfig::default())
}

pub fn cross_check_config(g: &GroupSpec, mode: RangeMode, cfg: &SquareConfig) -> CrossCheckReport {
    let labels = chartab::irr_plus_with(g, mode, false);
    let entries = labels.par_iter().map(|l| check_label(g, l, cfg)).collect();
    CrossCheckReport {
        family: g.family(),
        q: g.q(),
        entries,
    }
}

/// The rational value of a class, when it is rational.
pub fn rational_class(c: &SquareClass) -> Option<BigInt> {
    match c {
        SquareClass::Rational(n) => Some(n.clone()),
        SquareClass::Field(e) => {
            let r = e.as_rational()?;
            crate::cyclo::squarefree_part(&(r.numer() * r.denom())).ok()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::class_eq;
    use crate::groups::make_group_q;

    fn g(f: Family, q: u64) -> GroupSpec {
        make_group_q(f, q).unwrap()
    }

    fn rat(c: &SquareClass) -> i64 {
        i64::try_from(rational_class(c).unwrap()).unwrap()
    }

    #[test]
    fn complex_pairs() {
        assert_eq!(rat(&det_complex_pair(1, (6, 1)).unwrap()), 3);
        let c = det_complex_pair(2, (7, 1)).unwrap();
        assert!(class_eq(&c, &one_class(&RealField::from_conductor(7).unwrap())).unwrap());
        assert_eq!(rat(&det_complex_pair(1, (4, 1)).unwrap()), 1);
        assert!(matches!(
            det_complex_pair(1, (2, 1)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn p_group_part() {
        assert_eq!(
            rat(&det_chi_u(&g(Family::SL, 5), &CharLabel::st(1)).unwrap()),
            5
        );
        assert_eq!(
            rat(&det_chi_u(&g(Family::SL, 9), &CharLabel::rt(1)).unwrap()),
            1
        );
        assert_eq!(
            rat(&det_chi_u(&g(Family::SU, 3), &CharLabel::st(1)).unwrap()),
            3
        );
    }

    #[test]
    fn torus_part() {
        let (c, notes) = det_chi_t(&g(Family::SL, 7), &CharLabel::st(1)).unwrap();
        assert_eq!(rat(&c), 3);
        assert_eq!(notes.len(), 3);
        assert_eq!(
            rat(&det_chi_t(&g(Family::SL, 7), &CharLabel::st_prime(1))
                .unwrap()
                .0),
            3
        );
        assert_eq!(
            rat(&det_chi_t(&g(Family::SU, 5), &CharLabel::rt(1)).unwrap().0),
            1
        );
    }

    #[test]
    fn borel_values() {
        assert_eq!(
            rat(&det_borel(&g(Family::SL, 7), &CharLabel::st(1))
                .unwrap()
                .value),
            21
        );
        assert_eq!(
            rat(&det_borel(&g(Family::SL, 3), &CharLabel::rt(1))
                .unwrap()
                .value),
            3
        );
        assert_eq!(
            rat(&det_borel(&g(Family::SU, 3), &CharLabel::st(1))
                .unwrap()
                .value),
            3
        );
        assert!(matches!(
            det_borel(&g(Family::SL, 7), &CharLabel::qs()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn permutation_values() {
        assert_eq!(
            rat(&det_permutation(&g(Family::SL, 2), &CharLabel::qs())
                .unwrap()
                .value),
            7
        );
        assert_eq!(
            rat(&det_permutation(&g(Family::SU, 2), &CharLabel::qcubed())
                .unwrap()
                .value),
            1
        );
        assert_eq!(
            rat(&det_permutation(&g(Family::SL, 4), &CharLabel::qcubed())
                .unwrap()
                .value),
            105
        );
        assert!(det_permutation(&g(Family::SU, 3), &CharLabel::qcubed()).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(
            rat(&det_main(&g(Family::SL, 7), &CharLabel::st_prime(1))
                .unwrap()
                .value),
            21
        );
        let su5 = det_main(&g(Family::SU, 5), &CharLabel::st(1)).unwrap();
        assert_eq!(rat(&su5.value), 5);
        assert!(su5.field.real_field().unwrap().is_rational());
        assert_eq!(
            rat(&det_main(&g(Family::SL, 5), &CharLabel::st(1))
                .unwrap()
                .value),
            5
        );
        assert!(matches!(
            det_main(&g(Family::SU, 3), &CharLabel::rt(1)),
            Err(Error::Degenerate(_))
        ));
        assert!(det_main(&g(Family::SL, 3), &CharLabel::qcubed()).is_err());
    }

    #[test]
    fn routes_agree_small() {
        for (f, q) in [
            (Family::SL, 7),
            (Family::SU, 9),
            (Family::SL, 2),
            (Family::SU, 4),
        ] {
            let r = cross_check(&g(f, q));
            assert!(
                r.all_agree(),
                "{f}{q}: {:?}",
                r.entries
                    .iter()
                    .map(|e| (e.label, e.verdict.clone()))
                    .collect::<Vec<_>>()
            );
            assert!(r.compared() > 0);
        }
    }
}
