use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::groups::{Family, GroupSpec};

use super::{degree, validate, CharKind, CharLabel, RangeMode};

/// A linear character of the maximal torus `T`.
///
/// For `SL_3(q)` the character `α₁^{u1} α₂^{u2}` sends `diag(t^a, t^{-a-b}, t^b)`
/// to `μ_{q-1}^{a·u1 + b·u2}`; for `SU_3(q)` the character `α^u` sends the
/// element with first entry `τ^a` to `μ_{q²-1}^{a·u}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TorusChar {
    Sl { u1: u64, u2: u64, m: u64 },
    Su { u: u64, m: u64 },
}

impl TorusChar {
    pub fn sl(g: &GroupSpec, u1: i64, u2: i64) -> TorusChar {
        let m = g.q() - 1;
        let r = |x: i64| x.rem_euclid(m as i64) as u64;
        TorusChar::Sl {
            u1: r(u1),
            u2: r(u2),
            m,
        }
    }

    pub fn su(g: &GroupSpec, u: i64) -> TorusChar {
        let m = g.q() * g.q() - 1;
        TorusChar::Su {
            u: u.rem_euclid(m as i64) as u64,
            m,
        }
    }

    pub fn trivial(g: &GroupSpec) -> TorusChar {
        match g.family() {
            Family::SL => Self::sl(g, 0, 0),
            Family::SU => Self::su(g, 0),
        }
    }

    /// Order of the root of unity `μ_m` in which values are expressed.
    pub fn modulus(&self) -> u64 {
        match *self {
            TorusChar::Sl { m, .. } | TorusChar::Su { m, .. } => m,
        }
    }

    /// `g` with `ℚ(θ) = ℚ(μ_m^g)`.
    pub fn exponent_gcd(&self) -> u64 {
        match *self {
            TorusChar::Sl { u1, u2, m } => u1.gcd(&u2).gcd(&m),
            TorusChar::Su { u, m } => u.gcd(&m),
        }
    }

    /// Order of `θ` as an element of the character group.
    pub fn order(&self) -> u64 {
        self.modulus() / self.exponent_gcd()
    }

    pub fn conj(&self) -> TorusChar {
        let neg = |x: u64, m: u64| (m - x % m) % m;
        match *self {
            TorusChar::Sl { u1, u2, m } => TorusChar::Sl {
                u1: neg(u1, m),
                u2: neg(u2, m),
                m,
            },
            TorusChar::Su { u, m } => TorusChar::Su { u: neg(u, m), m },
        }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent_gcd() == self.modulus()
    }

    /// Exponent of `μ_m` taken on the torus element with coordinates `(a, b)`.
    pub fn exponent_at(&self, a: u64, b: u64) -> u64 {
        match *self {
            TorusChar::Sl { u1, u2, m } => ((a % m) * u1 + (b % m) * u2) % m,
            TorusChar::Su { u, m } => ((a % m) as u128 * u as u128 % m as u128) as u64,
        }
    }
}

impl fmt::Display for TorusChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusChar::Sl { u1, u2, .. } => write!(f, "a1^{u1}*a2^{u2}"),
            TorusChar::Su { u, .. } => write!(f, "a^{u}"),
        }
    }
}

/// The distinct Weyl conjugates of `θ`.
pub fn weyl_orbit(g: &GroupSpec, theta: &TorusChar) -> Vec<TorusChar> {
    let mut out: Vec<TorusChar> = Vec::new();
    let mut push = |t: TorusChar| {
        if !out.contains(&t) {
            out.push(t);
        }
    };
    match *theta {
        TorusChar::Sl { u1, u2, .. } => {
            let triple = [u1 as i64, 0, u2 as i64];
            for [i, j, k] in [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ] {
                let (x, y, z) = (triple[i], triple[j], triple[k]);
                push(TorusChar::sl(g, x - y, z - y));
            }
        }
        TorusChar::Su { u, .. } => {
            push(*theta);
            push(TorusChar::su(g, -(g.q() as i64) * u as i64));
        }
    }
    out
}

/// A complex-conjugate pair of torus characters; the pair spans
/// `ℚ(μ_m^g)` over `ℚ(ϑ_m^{(g)})` with `(m, g) = field`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusPair {
    pub theta: TorusChar,
    pub conj: TorusChar,
    pub field: (u64, u64),
}

/// The character `χ_T` of `T` on the `U`-fixed space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusRestriction {
    pub complex_pairs: Vec<TorusPair>,
    pub real_chars: Vec<TorusChar>,
    pub total_degree: u64,
    pub degenerate: bool,
}

impl TorusRestriction {
    fn from_parts(pairs: Vec<TorusChar>, reals: Vec<TorusChar>) -> TorusRestriction {
        let mut complex_pairs = Vec::new();
        let mut real_chars = reals;
        for t in pairs {
            if t.is_real() {
                real_chars.push(t);
                real_chars.push(t.conj());
            } else {
                complex_pairs.push(TorusPair {
                    theta: t,
                    conj: t.conj(),
                    field: (t.modulus(), t.exponent_gcd()),
                });
            }
        }
        let total_degree = 2 * complex_pairs.len() as u64 + real_chars.len() as u64;
        let degenerate = !real_chars.is_empty();
        TorusRestriction {
            complex_pairs,
            real_chars,
            total_degree,
            degenerate,
        }
    }
}

pub fn harish_chandra(g: &GroupSpec, label: &CharLabel) -> Result<TorusRestriction> {
    validate(g, label, RangeMode::Unitary)?;
    let triv = TorusChar::trivial(g);
    let (pairs, reals) = match (g.family(), label.kind, label.u) {
        (Family::SL, CharKind::St, Some(u)) => {
            let u = u as i64;
            (
                vec![
                    TorusChar::sl(g, u, -u),
                    TorusChar::sl(g, 2 * u, u),
                    TorusChar::sl(g, u, 2 * u),
                ],
                vec![],
            )
        }
        (Family::SL, CharKind::StPrime, Some(_)) => {
            let j = (g.q() as i64 - 1) / 3;
            (vec![TorusChar::sl(g, j, -j)], vec![])
        }
        (Family::SU, CharKind::Rt, Some(u)) => (
            vec![TorusChar::su(g, (g.q() as i64 + 1) * u as i64)],
            vec![],
        ),
        (Family::SL, CharKind::Qs, _) => (vec![], vec![triv, triv]),
        (_, CharKind::QCubed, _) => (vec![], vec![triv]),
        _ => (vec![], vec![]),
    };
    Ok(TorusRestriction::from_parts(pairs, reals))
}

/// A constituent of an induced character.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constituent {
    Trivial,
    Char(CharLabel),
}

impl Constituent {
    pub fn degree(&self, g: &GroupSpec) -> u64 {
        match self {
            Constituent::Trivial => 1,
            Constituent::Char(l) => degree(g, l.kind),
        }
    }
}

/// Irreducible constituents of `Ind_B^G(θ)`, for the torus characters whose
/// decomposition is known in closed form.
pub fn induced_decomposition(g: &GroupSpec, theta: &TorusChar) -> Result<Vec<Constituent>> {
    use Constituent::{Char, Trivial};
    if theta.is_trivial() {
        return Ok(match g.family() {
            Family::SL => vec![
                Trivial,
                Char(CharLabel::qs()),
                Char(CharLabel::qs()),
                Char(CharLabel::qcubed()),
            ],
            Family::SU => vec![Trivial, Char(CharLabel::qcubed())],
        });
    }
    let unsupported = || {
        Error::Unsupported(format!(
            "no closed-form decomposition of Ind(θ) for θ = {theta}"
        ))
    };
    match (g.family(), *theta) {
        (Family::SL, TorusChar::Sl { m, .. }) => {
            let v = weyl_orbit(g, theta)
                .into_iter()
                .filter_map(|t| match t {
                    TorusChar::Sl { u1, u2, .. } if u1 != 0 && (u1 + u2) % m == 0 => Some(u1),
                    _ => None,
                })
                .min()
                .ok_or_else(unsupported)?;
            if m % 3 == 0 && (v == m / 3 || v == 2 * m / 3) {
                return Ok((0..3).map(|i| Char(CharLabel::st_prime(i))).collect());
            }
            let label = CharLabel::st(v);
            validate(g, &label, RangeMode::Table).map_err(|_| unsupported())?;
            Ok(vec![Char(label)])
        }
        (Family::SU, TorusChar::Su { u, .. }) => {
            let q = g.q();
            if u % (q + 1) != 0 {
                return Err(unsupported());
            }
            let v = u / (q + 1);
            if (2 * v).is_multiple_of(q - 1) {
                return Err(unsupported());
            }
            Ok(vec![Char(CharLabel::rt(v.min(q - 1 - v)))])
        }
        _ => Err(Error::Contract(
            "torus character does not belong to this group".into(),
        )),
    }
}
