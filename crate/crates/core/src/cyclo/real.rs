//! The real cyclotomic fields `ℚ(ϑ_n)` with elements in the power basis of
//! `ϑ_n = ϑ_n^{(1)} = 2cos(2π/n)`.
//!
//! Every field `ℚ(ϑ_m^{(j)})` equals `ℚ(ϑ_c)` for a canonical conductor `c`:
//! reduce to `m / gcd(m, j)`, halve when `≡ 2 mod 4`, and collapse the
//! conductors of degree one to `c = 1` (the rationals).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly;
use crate::arith::euler_phi;
use crate::error::{Error, Result};

/// Default upper bound on canonical conductors.
pub const DEFAULT_MAX_CONDUCTOR: u64 = 120;

pub fn canonical_conductor(m: u64, j: i64) -> u64 {
    let g = if m == 0 {
        0
    } else {
        (j.rem_euclid(m as i64) as u64).gcd(&m)
    };
    let n = m.checked_div(g).unwrap_or(1);
    canonical_of(n)
}

fn canonical_of(n: u64) -> u64 {
    let n = if n % 4 == 2 { n / 2 } else { n };
    if n <= 2 || euler_phi(n) <= 2 {
        1
    } else {
        n
    }
}

struct Inner {
    conductor: u64,
    degree: usize,
    minpoly: Vec<BigInt>,
    /// `ϑ_c^{(e)}` for `0 ≤ e < c`, integral coordinates.
    thetas: Vec<Vec<BigInt>>,
}

/// `ℚ(ϑ_c)` for a canonical conductor `c`.
#[derive(Clone)]
pub struct RealField(Arc<Inner>);

impl PartialEq for RealField {
    fn eq(&self, other: &Self) -> bool {
        self.0.conductor == other.0.conductor
    }
}

impl Eq for RealField {}

impl fmt::Debug for RealField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.conductor == 1 {
            write!(f, "Q")
        } else {
            write!(f, "Q(theta_{})", self.0.conductor)
        }
    }
}

impl fmt::Display for RealField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl RealField {
    pub fn rational() -> RealField {
        Self::build(1)
    }

    /// `ℚ(ϑ_m^{(j)})`, subject to the default conductor cap.
    pub fn from_theta(m: u64, j: i64) -> Result<RealField> {
        Self::from_theta_capped(m, j, DEFAULT_MAX_CONDUCTOR)
    }

    pub fn from_theta_capped(m: u64, j: i64, max_conductor: u64) -> Result<RealField> {
        if m == 0 {
            return Err(Error::Parameter("theta(m, j) requires m ≥ 1".into()));
        }
        let c = canonical_conductor(m, j);
        if c > max_conductor {
            return Err(Error::Capacity(format!(
                "conductor {c} exceeds the configured cap {max_conductor}"
            )));
        }
        Ok(Self::build(c))
    }

    /// `ℚ(ϑ_n)`, the maximal real subfield of `ℚ(μ_n)`.
    pub fn from_conductor(n: u64) -> Result<RealField> {
        Self::from_theta(n, 1)
    }

    fn build(c: u64) -> RealField {
        static CACHE: OnceLock<Mutex<HashMap<u64, RealField>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(k) = cache.lock().expect("field cache").get(&c) {
            return k.clone();
        }
        let minpoly = poly::real_minpoly(c);
        let degree = minpoly.len() - 1;
        let mut thetas = Vec::with_capacity(c as usize);
        if c == 1 {
            thetas.push(vec![BigInt::from(2)]);
        } else {
            let gen = {
                let mut g = vec![BigInt::zero(); degree];
                g[1] = BigInt::one();
                g
            };
            let mut prev = {
                let mut t = vec![BigInt::zero(); degree];
                t[0] = BigInt::from(2);
                t
            };
            thetas.push(prev.clone());
            let mut cur = gen.clone();
            for _ in 1..c {
                thetas.push(cur.clone());
                let prod = poly::reduce_int(poly::mul_int(&gen, &cur), &minpoly);
                let next: Vec<BigInt> = prod.iter().zip(&prev).map(|(a, b)| a - b).collect();
                prev = std::mem::replace(&mut cur, next);
            }
        }
        let field = RealField(Arc::new(Inner {
            conductor: c,
            degree,
            minpoly,
            thetas,
        }));
        cache.lock().expect("field cache").insert(c, field.clone());
        field
    }

    pub fn conductor(&self) -> u64 {
        self.0.conductor
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn is_rational(&self) -> bool {
        self.0.conductor == 1
    }

    /// Minimal polynomial of the power-basis generator, low degree first.
    pub fn minpoly(&self) -> &[BigInt] {
        &self.0.minpoly
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &RealField) -> bool {
        self.0.conductor.is_multiple_of(other.0.conductor)
    }

    /// The indices `k` of the real embeddings `ϑ_c ↦ 2cos(2πk/c)`.
    pub fn embedding_indices(&self) -> Vec<u64> {
        let c = self.0.conductor;
        if c == 1 {
            return vec![0];
        }
        (1..c).filter(|&k| 2 * k < c && k.gcd(&c) == 1).collect()
    }

    pub fn zero(&self) -> RealElem {
        RealElem::from_coeffs(self, vec![BigRational::zero(); self.0.degree])
    }

    pub fn one(&self) -> RealElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> RealElem {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(&self, n: BigInt) -> RealElem {
        self.from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(&self, r: BigRational) -> RealElem {
        let mut coeffs = vec![BigRational::zero(); self.0.degree];
        coeffs[0] = r;
        RealElem::from_coeffs(self, coeffs)
    }

    /// `ϑ_c`, the power-basis generator.
    pub fn generator(&self) -> RealElem {
        self.theta(self.0.conductor, 1)
            .expect("generator lies in its own field")
    }

    /// `ϑ_m^{(j)}` as an element of this field.
    pub fn theta(&self, m: u64, j: i64) -> Result<RealElem> {
        if m == 0 {
            return Err(Error::Parameter("theta(m, j) requires m ≥ 1".into()));
        }
        let jm = j.rem_euclid(m as i64) as u64;
        let g = jm.gcd(&m);
        let (n, k) = if jm == 0 { (1, 0) } else { (m / g, jm / g) };
        let rational = |v: i64| Ok(self.from_int(v));
        match n {
            1 => return rational(2),
            2 => return rational(-2),
            3 => return rational(-1),
            4 => return rational(0),
            6 => return rational(1),
            _ => {}
        }
        if n % 4 == 2 {
            // μ_n^k = -μ_{n/2}^{(k + n/2)/2} for odd k
            let half = n / 2;
            return Ok(-self.theta(half, ((k + half) / 2) as i64)?);
        }
        let c = self.0.conductor;
        if !c.is_multiple_of(n) {
            return Err(Error::Contract(format!(
                "theta({m}, {j}) does not lie in {self}"
            )));
        }
        let e = (k * (c / n)) % c;
        let coeffs = self.0.thetas[e as usize]
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        Ok(RealElem::from_coeffs(self, coeffs))
    }
}

/// An element of a real cyclotomic field.
#[derive(Clone, PartialEq, Eq)]
pub struct RealElem {
    field: RealField,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for RealElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field)
    }
}

impl fmt::Display for RealElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.field.conductor();
        let mut terms = Vec::new();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let t = match i {
                0 => format!("{a}"),
                1 => format!("({a})*theta({c},1)"),
                _ => format!("({a})*theta({c},1)^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl RealElem {
    pub(crate) fn from_coeffs(field: &RealField, mut coeffs: Vec<BigRational>) -> RealElem {
        coeffs.resize(field.degree(), BigRational::zero());
        RealElem {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds an element from power-basis coordinates, reducing if needed.
    pub fn new(field: &RealField, coeffs: Vec<BigRational>) -> RealElem {
        let reduced = poly::reduce_rat(coeffs, field.minpoly());
        RealElem::from_coeffs(field, reduced)
    }

    pub fn field(&self) -> &RealField {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `ℚ`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same(&self, other: &RealElem) {
        assert!(
            self.field == other.field,
            "mixed fields {} and {}",
            self.field,
            other.field
        );
    }

    pub fn scale(&self, r: &BigRational) -> RealElem {
        RealElem::from_coeffs(&self.field, self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn pow(&self, mut e: u64) -> RealElem {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<RealElem> {
        if self.is_zero() {
            return Err(Error::Contract("inverse of zero".into()));
        }
        let m = poly::to_rat(self.field.minpoly());
        let inv = poly::inv_mod_rat(&self.coeffs, &m).ok_or_else(|| {
            Error::Consistency("element not invertible modulo the minimal polynomial".into())
        })?;
        Ok(RealElem::new(&self.field, inv))
    }

    /// The same number inside a field containing this one.
    pub fn to_field(&self, target: &RealField) -> Result<RealElem> {
        if !target.contains(&self.field) {
            return Err(Error::Contract(format!(
                "{} is not a subfield of {target}",
                self.field
            )));
        }
        if target == &self.field {
            return Ok(self.clone());
        }
        let gen = target.theta(self.field.conductor(), 1)?;
        let mut acc = target.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &gen) + &target.from_rational(c.clone());
        }
        Ok(acc)
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Numerical value in the embedding `ϑ_c ↦ 2cos(2πk/c)` (double precision).
    pub fn approx(&self, k: u64) -> f64 {
        let c = self.field.conductor();
        let x = if c == 1 {
            0.0
        } else {
            2.0 * (2.0 * std::f64::consts::PI * k as f64 / c as f64).cos()
        };
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * x + a.to_f64().unwrap_or(f64::NAN))
    }

    pub fn is_negative_rational(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_negative())
    }
}

impl Add for &RealElem {
    type Output = RealElem;
    fn add(self, rhs: &RealElem) -> RealElem {
        self.check_same(rhs);
        RealElem::from_coeffs(
            &self.field,
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &RealElem {
    type Output = RealElem;
    fn sub(self, rhs: &RealElem) -> RealElem {
        self.check_same(rhs);
        RealElem::from_coeffs(
            &self.field,
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Mul for &RealElem {
    type Output = RealElem;
    fn mul(self, rhs: &RealElem) -> RealElem {
        self.check_same(rhs);
        RealElem::new(&self.field, poly::mul_rat(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for RealElem {
    type Output = RealElem;
    fn neg(self) -> RealElem {
        RealElem::from_coeffs(&self.field, self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &RealElem {
    type Output = RealElem;
    fn neg(self) -> RealElem {
        -self.clone()
    }
}

/// `ϑ_m^{(j)} = μ_m^j + μ_m^{-j}` inside `ℚ(ϑ_m^{(j)})`.
pub fn theta(m: u64, j: i64) -> Result<RealElem> {
    RealField::from_theta(m, j)?.theta(m, j)
}

/// `δ = 2 - ϑ_m^{(2j)}`, the totally positive element with
/// `ℚ(μ_m^j) = K[√-δ]` over `K = ℚ(ϑ_m^{(j)})`.
///
/// Returns [`Error::Degenerate`] when `μ_m^j` is real.
pub fn delta(m: u64, j: i64) -> Result<RealElem> {
    if m == 0 {
        return Err(Error::Parameter("delta(m, j) requires m ≥ 1".into()));
    }
    if (2 * j).rem_euclid(m as i64) == 0 {
        return Err(Error::Degenerate(format!(
            "mu_{m}^{j} is real, so delta({m}, {j}) = 0"
        )));
    }
    let k = RealField::from_theta(m, j)?;
    Ok(&k.from_int(2) - &k.theta(m, 2 * j)?)
}
