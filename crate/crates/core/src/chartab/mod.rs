//! The even-degree indicator-`+` slice of the generic character tables of
//! `SL_3(q)` and `SU_3(q)`: labels, parameter ranges, degrees, character
//! fields and Harish-Chandra data.

mod ennola;
mod torus;

use std::fmt;
use std::str::FromStr;

use crate::cyclo::RealField;
use crate::error::{Error, Result};
use crate::groups::{Family, GroupSpec};

pub use ennola::{degree_polynomial, order_polynomial, RatPoly};
pub use torus::{
    harish_chandra, induced_decomposition, weyl_orbit, Constituent, TorusChar, TorusPair,
    TorusRestriction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharKind {
    Qs,
    QCubed,
    StPrime,
    St,
    Rt,
}

impl CharKind {
    pub const ALL: [CharKind; 5] = [
        CharKind::Qs,
        CharKind::QCubed,
        CharKind::StPrime,
        CharKind::St,
        CharKind::Rt,
    ];

    /// Lowercase identifier used on the command line and in serialized output.
    pub fn ident(self) -> &'static str {
        match self {
            CharKind::Qs => "qs",
            CharKind::QCubed => "qcubed",
            CharKind::StPrime => "stprime",
            CharKind::St => "st",
            CharKind::Rt => "rt",
        }
    }

    pub fn has_parameter(self) -> bool {
        matches!(self, CharKind::StPrime | CharKind::St | CharKind::Rt)
    }
}

impl fmt::Display for CharKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.ident())
    }
}

impl FromStr for CharKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CharKind::ALL
            .into_iter()
            .find(|k| k.ident() == s.to_ascii_lowercase())
            .ok_or_else(|| {
                Error::Parameter(format!(
                    "unknown character kind '{s}' (expected qs, qcubed, stprime, st or rt)"
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharLabel {
    pub kind: CharKind,
    pub u: Option<u64>,
}

impl CharLabel {
    pub fn qs() -> Self {
        CharLabel {
            kind: CharKind::Qs,
            u: None,
        }
    }

    pub fn qcubed() -> Self {
        CharLabel {
            kind: CharKind::QCubed,
            u: None,
        }
    }

    pub fn st_prime(u: u64) -> Self {
        CharLabel {
            kind: CharKind::StPrime,
            u: Some(u),
        }
    }

    pub fn st(u: u64) -> Self {
        CharLabel {
            kind: CharKind::St,
            u: Some(u),
        }
    }

    pub fn rt(u: u64) -> Self {
        CharLabel {
            kind: CharKind::Rt,
            u: Some(u),
        }
    }

    pub fn new(kind: CharKind, u: Option<u64>) -> Result<Self> {
        match (kind.has_parameter(), u) {
            (true, None) => Err(Error::Validity(format!("{kind} requires a parameter u"))),
            (false, Some(_)) => Err(Error::Validity(format!("{kind} takes no parameter"))),
            _ => Ok(CharLabel { kind, u }),
        }
    }

    fn param(&self) -> Result<u64> {
        self.u
            .ok_or_else(|| Error::Validity(format!("{} requires a parameter u", self.kind)))
    }
}

impl fmt::Display for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.u {
            Some(u) => write!(f, "{}({u})", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

/// The character field `ℚ(χ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Rational,
    /// `ℚ(ϑ_m^{(j)})`.
    RealCyclotomic {
        m: u64,
        j: u64,
    },
}

impl FieldDesc {
    pub fn real_field(&self) -> Result<RealField> {
        match *self {
            FieldDesc::Rational => Ok(RealField::rational()),
            FieldDesc::RealCyclotomic { m, j } => RealField::from_theta(m, j as i64),
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rational => write!(f, "Q"),
            FieldDesc::RealCyclotomic { m, j } => write!(f, "Q(theta({m},{j}))"),
        }
    }
}

/// Which range to use for the `rt` parameter of `SU_3(q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RangeMode {
    /// `1 ≤ u < q + ε`, uniform in both families.
    #[default]
    Table,
    /// `1 ≤ u < q + 1` for `SU_3(q)`.
    Unitary,
}

impl FromStr for RangeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "table" => Ok(RangeMode::Table),
            "unitary" => Ok(RangeMode::Unitary),
            other => Err(Error::Parameter(format!(
                "unknown range mode '{other}' (expected table or unitary)"
            ))),
        }
    }
}

impl fmt::Display for RangeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RangeMode::Table => "table",
            RangeMode::Unitary => "unitary",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharInfo {
    pub label: CharLabel,
    pub degree: u64,
    pub field: FieldDesc,
    pub in_irr_plus: bool,
    pub principal_series: bool,
    /// `χ_T(1)`, the dimension of the `U`-fixed space.
    pub hc_degree: u64,
    pub degenerate: bool,
}

fn q_minus_eps(g: &GroupSpec) -> u64 {
    (g.q() as i64 - g.epsilon()) as u64
}

fn q_plus_eps(g: &GroupSpec) -> u64 {
    (g.q() as i64 + g.epsilon()) as u64
}

fn st_excluded(m: u64, u: u64) -> bool {
    [(1, 3), (1, 2), (2, 3)]
        .iter()
        .any(|&(a, b)| (a * m).is_multiple_of(b) && u == a * m / b)
}

/// Upper bound (exclusive) of the `rt` parameter.
pub fn rt_bound(g: &GroupSpec, mode: RangeMode) -> u64 {
    match (g.family(), mode) {
        (Family::SU, RangeMode::Unitary) => g.q() + 1,
        _ => q_plus_eps(g),
    }
}

/// Checks the parameter constraints of a label, naming the violated one.
pub fn validate(g: &GroupSpec, label: &CharLabel, mode: RangeMode) -> Result<()> {
    CharLabel::new(label.kind, label.u)?;
    let m = q_minus_eps(g);
    match label.kind {
        CharKind::Qs | CharKind::QCubed => Ok(()),
        CharKind::StPrime => {
            let u = label.param()?;
            if !m.is_multiple_of(3) {
                return Err(Error::Validity(format!(
                    "stprime exists only when 3 divides q - ε = {m}"
                )));
            }
            if u > 2 {
                return Err(Error::Validity(format!(
                    "stprime requires 0 ≤ u ≤ 2, got {u}"
                )));
            }
            Ok(())
        }
        CharKind::St => {
            let u = label.param()?;
            if u < 1 || u >= m {
                return Err(Error::Validity(format!(
                    "st requires 1 ≤ u < q - ε = {m}, got {u}"
                )));
            }
            if st_excluded(m, u) {
                return Err(Error::Validity(format!(
                    "st excludes u ∈ {{(q-ε)/3, (q-ε)/2, 2(q-ε)/3}} (q - ε = {m}), got {u}"
                )));
            }
            Ok(())
        }
        CharKind::Rt => {
            let u = label.param()?;
            let bound = rt_bound(g, mode);
            if u < 1 || u >= bound {
                return Err(Error::Validity(format!(
                    "rt requires 1 ≤ u < {bound} ({mode} range), got {u}"
                )));
            }
            Ok(())
        }
    }
}

/// Whether `label` belongs to the even-degree indicator-`+` set of `g`.
pub fn kind_in_irr_plus(g: &GroupSpec, kind: CharKind) -> bool {
    let odd = g.q() % 2 == 1;
    matches!(
        (g.family(), odd, kind),
        (
            Family::SL,
            true,
            CharKind::Qs | CharKind::StPrime | CharKind::St | CharKind::Rt
        ) | (
            Family::SU,
            true,
            CharKind::StPrime | CharKind::St | CharKind::Rt
        ) | (Family::SL, false, CharKind::Qs | CharKind::QCubed)
            | (Family::SU, false, CharKind::QCubed)
    )
}

/// `true` when the `rt` torus character of `SU_3(q)` is real (`2u ≡ 0 mod q - 1`).
pub fn is_degenerate(g: &GroupSpec, label: &CharLabel) -> bool {
    match (g.family(), label.kind, label.u) {
        (Family::SU, CharKind::Rt, Some(u)) => (2 * u) % (g.q() - 1) == 0,
        _ => false,
    }
}

pub fn degree(g: &GroupSpec, kind: CharKind) -> u64 {
    let q = g.q() as i64;
    let e = g.epsilon();
    let v = match kind {
        CharKind::Qs => q * (q + e),
        CharKind::QCubed => q * q * q,
        CharKind::StPrime => (q + e) * (q * q + e * q + 1) / 3,
        CharKind::St => (q + e) * (q * q + e * q + 1),
        CharKind::Rt => (q - e) * (q * q + e * q + 1),
    };
    v as u64
}

pub fn field_of(g: &GroupSpec, label: &CharLabel) -> FieldDesc {
    match (label.kind, label.u) {
        (CharKind::St, Some(u)) => FieldDesc::RealCyclotomic {
            m: q_minus_eps(g),
            j: u,
        },
        (CharKind::Rt, Some(u)) => FieldDesc::RealCyclotomic {
            m: q_plus_eps(g),
            j: u,
        },
        _ => FieldDesc::Rational,
    }
}

pub fn is_principal_series(g: &GroupSpec, label: &CharLabel) -> Result<bool> {
    validate(g, label, RangeMode::Unitary)?;
    Ok(hc_degree(g, label.kind) > 0)
}

fn hc_degree(g: &GroupSpec, kind: CharKind) -> u64 {
    match (g.family(), kind) {
        (Family::SL, CharKind::Qs | CharKind::StPrime) => 2,
        (Family::SL, CharKind::St) => 6,
        (Family::SL, CharKind::Rt) => 0,
        (_, CharKind::QCubed) => 1,
        (Family::SU, CharKind::Rt) => 2,
        (Family::SU, _) => 0,
    }
}

pub fn char_info(g: &GroupSpec, label: &CharLabel) -> Result<CharInfo> {
    char_info_with(g, label, RangeMode::Table)
}

pub fn char_info_with(g: &GroupSpec, label: &CharLabel, mode: RangeMode) -> Result<CharInfo> {
    validate(g, label, mode)?;
    Ok(CharInfo {
        label: *label,
        degree: degree(g, label.kind),
        field: field_of(g, label),
        in_irr_plus: kind_in_irr_plus(g, label.kind),
        principal_series: hc_degree(g, label.kind) > 0,
        hc_degree: hc_degree(g, label.kind),
        degenerate: is_degenerate(g, label),
    })
}

/// All labels of the even-degree indicator-`+` characters, in table order.
pub fn irr_plus(g: &GroupSpec) -> Vec<CharLabel> {
    irr_plus_with(g, RangeMode::Table, false)
}

/// As [`irr_plus`]; `canonicalize` folds `u ↦ min(u, m - u)` and drops repeats.
pub fn irr_plus_with(g: &GroupSpec, mode: RangeMode, canonicalize: bool) -> Vec<CharLabel> {
    let mut out = Vec::new();
    let m = q_minus_eps(g);
    for kind in CharKind::ALL {
        if !kind_in_irr_plus(g, kind) {
            continue;
        }
        match kind {
            CharKind::Qs | CharKind::QCubed => out.push(CharLabel { kind, u: None }),
            CharKind::StPrime => {
                if m.is_multiple_of(3) {
                    out.extend((0..3).map(CharLabel::st_prime));
                }
            }
            CharKind::St => {
                let us = (1..m).filter(|&u| !st_excluded(m, u));
                push_folded(&mut out, kind, us, m, canonicalize);
            }
            CharKind::Rt => {
                let us = 1..rt_bound(g, mode);
                push_folded(&mut out, kind, us, q_plus_eps(g), canonicalize);
            }
        }
    }
    out
}

fn push_folded(
    out: &mut Vec<CharLabel>,
    kind: CharKind,
    us: impl Iterator<Item = u64>,
    m: u64,
    fold: bool,
) {
    let mut seen = Vec::new();
    for u in us {
        let v = if fold {
            let r = u % m;
            match r.min(m - r) {
                0 => u,
                w => w,
            }
        } else {
            u
        };
        if !seen.contains(&v) {
            seen.push(v);
            out.push(CharLabel { kind, u: Some(v) });
        }
    }
}
