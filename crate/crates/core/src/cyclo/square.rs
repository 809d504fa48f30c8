//! Square tests and square classes in totally real cyclotomic fields.
//!
//! A positive answer always carries a witness `w` with `w² = e` checked in
//! exact arithmetic. A negative answer is certified either by a negative real
//! embedding or by a prime ideal of `ℤ[ϑ]` modulo which `e` is a nonzero
//! non-residue. Witnesses are found by ℓ-adic Newton lifting from a prime `ℓ`
//! of maximal residue degree.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::embed::has_negative_embedding;
use super::modp::{self, PolyP, ResidueField};
use super::poly;
use super::real::{RealElem, RealField};
use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

/// Resource limits of the square test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareConfig {
    /// Largest precision (bits) used when certifying embedding signs.
    pub max_precision_bits: u32,
    /// Largest coefficient height (bits) of a witness the lifting will reach.
    pub max_witness_bits: u64,
    /// Number of primes examined before giving up.
    pub max_primes: usize,
    pub seed: u64,
}

impl Default for SquareConfig {
    fn default() -> Self {
        SquareConfig {
            max_precision_bits: 512,
            max_witness_bits: 1 << 15,
            max_primes: 200,
            seed: 0x5eed,
        }
    }
}

/// Why an element is not a square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonSquareReason {
    /// Rational and not the square of a rational.
    Rational,
    /// Some real embedding is negative.
    NegativeEmbedding,
    /// Non-residue modulo a prime ideal above `prime`.
    NonResidue { prime: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareTest {
    Square(RealElem),
    NonSquare(NonSquareReason),
}

impl SquareTest {
    pub fn is_square(&self) -> bool {
        matches!(self, SquareTest::Square(_))
    }
}

pub fn is_square_in(field: &RealField, e: &RealElem) -> Result<SquareTest> {
    is_square_in_with(field, e, &SquareConfig::default())
}

pub fn is_square_in_with(
    field: &RealField,
    e: &RealElem,
    cfg: &SquareConfig,
) -> Result<SquareTest> {
    if e.field() != field {
        return Err(Error::Contract(format!(
            "element of {} tested in {field}",
            e.field()
        )));
    }
    if e.is_zero() {
        return Err(Error::Contract("square test of zero".into()));
    }
    if let Some(r) = e.as_rational() {
        if r.is_negative() {
            return Ok(SquareTest::NonSquare(if field.is_rational() {
                NonSquareReason::Rational
            } else {
                NonSquareReason::NegativeEmbedding
            }));
        }
        if let Some(root) = rational_sqrt(&r) {
            return Ok(SquareTest::Square(field.from_rational(root)));
        }
        if field.is_rational() {
            return Ok(SquareTest::NonSquare(NonSquareReason::Rational));
        }
    }
    if has_negative_embedding(e, cfg.max_precision_bits) == Some(true) {
        return Ok(SquareTest::NonSquare(NonSquareReason::NegativeEmbedding));
    }
    let den = e.denominator();
    let den2 = &den * &den;
    let scaled: Vec<BigInt> = e
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den2 / c.denom()))
        .collect();
    match modular_search(field, &scaled, cfg)? {
        Search::NonResidue(prime) => {
            Ok(SquareTest::NonSquare(NonSquareReason::NonResidue { prime }))
        }
        Search::Root(w) => {
            let inv = BigRational::new(BigInt::one(), den);
            let coeffs = w
                .into_iter()
                .map(|c| BigRational::from_integer(c) * &inv)
                .collect();
            let root = RealElem::new(field, coeffs);
            if &(&root * &root) != e {
                return Err(Error::Consistency(
                    "square-root witness failed verification".into(),
                ));
            }
            Ok(SquareTest::Square(root))
        }
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let exact = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(BigRational::new(exact(r.numer())?, exact(r.denom())?))
}

enum Search {
    NonResidue(u64),
    Root(Vec<BigInt>),
}

/// Order of `a` in `(ℤ/n)^× / {±1}`.
fn order_pm(a: u64, n: u64) -> usize {
    let mut x = a % n;
    let mut k = 1;
    while x != 1 && x != n - 1 {
        x = x * (a % n) % n;
        k += 1;
    }
    k
}

fn modular_search(field: &RealField, e: &[BigInt], cfg: &SquareConfig) -> Result<Search> {
    let n = field.conductor();
    let d = field.degree();
    let psi = field.minpoly();
    let f_max = (1..n)
        .filter(|a| a.gcd(&n) == 1)
        .map(|a| order_pm(a, n))
        .max()
        .unwrap_or(1);
    let bound_bits = witness_bound_bits(field, e);
    if bound_bits > cfg.max_witness_bits {
        return Err(Error::Undecided(format!(
            "witness height bound of {bound_bits} bits exceeds the cap of {}",
            cfg.max_witness_bits
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut attempts = 0;
    let mut examined = 0;
    let mut ell = 2u64;
    while examined < cfg.max_primes {
        ell += 1;
        if !is_prime(ell) || n.is_multiple_of(ell) {
            continue;
        }
        let psi_l = modp::from_bigint_coeffs(psi, ell);
        let e_l = modp::from_bigint_coeffs(e, ell);
        if modp::gcd(&e_l, &psi_l, ell).len() != 1 {
            continue;
        }
        examined += 1;
        let f = order_pm(ell, n);
        let factors = modp::equal_degree_factor(&psi_l, f, ell, &mut rng);
        debug_assert_eq!(factors.len() * f, d);
        let mut roots = Vec::with_capacity(factors.len());
        for g in &factors {
            let k = ResidueField { g, l: ell };
            if !k.is_square(&e_l) {
                return Ok(Search::NonResidue(ell));
            }
            roots.push(k.sqrt(&e_l, &mut rng));
        }
        if f == f_max && factors.len() <= 8 && attempts < 4 {
            attempts += 1;
            if let Some(w) = lift_patterns(psi, &psi_l, &factors, &roots, e, ell, bound_bits) {
                return Ok(Search::Root(w));
            }
        }
    }
    Err(Error::Undecided(format!(
        "no certificate after {} primes in {field}",
        cfg.max_primes
    )))
}

/// Bits needed to pin down the integral coordinates of a square root of `e`.
fn witness_bound_bits(field: &RealField, e: &[BigInt]) -> u64 {
    let d = field.degree();
    let n = field.conductor();
    let e_bits = poly::max_abs_bits(e);
    let nodes: Vec<f64> = field
        .embedding_indices()
        .iter()
        .map(|&k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
        .collect();
    let psi: Vec<f64> = field
        .minpoly()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::MAX))
        .collect();
    let mut gamma = vec![0f64; d];
    for (k, &x) in nodes.iter().enumerate() {
        let deriv: f64 = nodes
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &y)| x - y)
            .product();
        let mut b = vec![0f64; d];
        b[d - 1] = 1.0;
        for i in (1..d).rev() {
            b[i - 1] = psi[i] + x * b[i];
        }
        for (g, bi) in gamma.iter_mut().zip(&b) {
            *g += (bi / deriv).abs();
        }
    }
    let gmax = gamma.into_iter().fold(1.0f64, f64::max);
    ((e_bits + d as u64) as f64 / 2.0 + gmax.log2()).ceil() as u64 + 8
}

fn reduce_mod(p: Vec<BigInt>, psi: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    poly::reduce_int(p, psi)
        .into_iter()
        .map(|c| c.mod_floor(m))
        .collect()
}

fn lift_patterns(
    psi: &[BigInt],
    psi_l: &[u64],
    factors: &[PolyP],
    roots: &[PolyP],
    e: &[BigInt],
    ell: u64,
    bound_bits: u64,
) -> Option<Vec<BigInt>> {
    let idempotents: Vec<PolyP> = factors
        .iter()
        .map(|g| {
            let (cofactor, _) = modp::divrem(psi_l, g, ell);
            let c = modp::inv_mod(&cofactor, g, ell).expect("coprime factors");
            modp::rem(&modp::mul(&cofactor, &c, ell), psi_l, ell)
        })
        .collect();
    let r = factors.len();
    for pattern in 0u32..(1 << (r - 1)) {
        let mut w0: PolyP = Vec::new();
        for (i, (root, idem)) in roots.iter().zip(&idempotents).enumerate() {
            let signed = if i > 0 && (pattern >> (i - 1)) & 1 == 1 {
                modp::sub(&[], root, ell)
            } else {
                root.clone()
            };
            w0 = modp::add(&w0, &modp::mul(&signed, idem, ell), ell);
        }
        w0 = modp::rem(&w0, psi_l, ell);
        if let Some(w) = newton_lift(psi, psi_l, &w0, e, ell, bound_bits) {
            return Some(w);
        }
    }
    None
}

fn newton_lift(
    psi: &[BigInt],
    psi_l: &[u64],
    w0: &[u64],
    e: &[BigInt],
    ell: u64,
    bound_bits: u64,
) -> Option<Vec<BigInt>> {
    let two_w0 = modp::scale(w0, 2, ell);
    let v0 = modp::inv_mod(&two_w0, psi_l, ell)?;
    let to_big = |p: &[u64]| -> Vec<BigInt> { p.iter().map(|&c| BigInt::from(c)).collect() };
    let mut w = to_big(w0);
    let mut v = to_big(&v0);
    let mut modulus = BigInt::from(ell);
    let target = BigInt::one() << (bound_bits + 1);
    let e_vec = e.to_vec();
    while modulus <= target {
        let m2 = &modulus * &modulus;
        let w_sq = reduce_mod(poly::mul_int(&w, &w), psi, &m2);
        let diff: Vec<BigInt> = w_sq
            .iter()
            .zip(e_vec.iter().chain(std::iter::repeat(&BigInt::zero())))
            .map(|(a, b)| a - b)
            .collect();
        let corr = reduce_mod(poly::mul_int(&diff, &v), psi, &m2);
        w = w
            .iter()
            .chain(std::iter::repeat(&BigInt::zero()))
            .zip(&corr)
            .map(|(a, b)| (a - b).mod_floor(&m2))
            .collect();
        let two_w: Vec<BigInt> = w.iter().map(|c| c * 2).collect();
        let av = reduce_mod(poly::mul_int(&two_w, &v), psi, &m2);
        let mut two_minus: Vec<BigInt> = av.iter().map(|c| -c).collect();
        two_minus[0] += 2;
        v = reduce_mod(poly::mul_int(&v, &two_minus), psi, &m2);
        modulus = m2;
    }
    let half = &modulus >> 1u32;
    let candidate: Vec<BigInt> = w
        .into_iter()
        .map(|c| if c > half { c - &modulus } else { c })
        .collect();
    let check = poly::reduce_int(poly::mul_int(&candidate, &candidate), psi);
    let mut e_pad = e_vec;
    e_pad.resize(check.len(), BigInt::zero());
    (check == e_pad).then_some(candidate)
}

/// Signed squarefree part of a nonzero integer.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::Contract("square class of zero".into()));
    }
    let sign = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut p = 2u64;
    while m.to_u64().is_none() && p < 1_000_000 {
        let pb = BigInt::from(p);
        let mut e = 0;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if let Some(small) = m.to_u64() {
        for (prime, e) in factorize(small) {
            if e % 2 == 1 {
                out *= prime;
            }
        }
        return Ok(sign * out);
    }
    let s = m.sqrt();
    if &s * &s == m {
        return Ok(sign * out);
    }
    Err(Error::Capacity(format!(
        "cannot factor the {}-bit cofactor",
        m.bits()
    )))
}

/// An element of `K^× / (K^×)²`.
#[derive(Clone, Debug)]
pub enum SquareClass {
    /// A class of `ℚ^×`, represented by a signed squarefree integer.
    Rational(BigInt),
    /// A class of `K^×` for a field `K ≠ ℚ`, represented by any element.
    Field(RealElem),
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareClass::Rational(n) => write!(f, "{n}"),
            SquareClass::Field(e) => write!(f, "{e}"),
        }
    }
}

impl SquareClass {
    pub fn field(&self) -> RealField {
        match self {
            SquareClass::Rational(_) => RealField::rational(),
            SquareClass::Field(e) => e.field().clone(),
        }
    }

    /// The representative as a field element.
    pub fn rep(&self) -> RealElem {
        match self {
            SquareClass::Rational(n) => RealField::rational().from_bigint(n.clone()),
            SquareClass::Field(e) => e.clone(),
        }
    }

    /// The image of this class in `K^×/(K^×)²` for an extension `K`.
    pub fn to_field(&self, target: &RealField) -> Result<SquareClass> {
        square_class(target, &self.rep().to_field(target)?)
    }

    pub fn rational_value(&self) -> Option<&BigInt> {
        match self {
            SquareClass::Rational(n) => Some(n),
            SquareClass::Field(_) => None,
        }
    }
}

pub fn square_class(field: &RealField, e: &RealElem) -> Result<SquareClass> {
    if e.field() != field {
        return Err(Error::Contract(format!(
            "element of {} given for {field}",
            e.field()
        )));
    }
    if e.is_zero() {
        return Err(Error::Contract("square class of zero".into()));
    }
    if field.is_rational() {
        let r = &e.coeffs()[0];
        return Ok(SquareClass::Rational(squarefree_part(
            &(r.numer() * r.denom()),
        )?));
    }
    Ok(SquareClass::Field(e.clone()))
}

fn same_field(a: &SquareClass, b: &SquareClass) -> Result<RealField> {
    let (fa, fb) = (a.field(), b.field());
    if fa != fb {
        return Err(Error::Contract(format!(
            "square classes over {fa} and {fb}"
        )));
    }
    Ok(fa)
}

pub fn class_mul(a: &SquareClass, b: &SquareClass) -> Result<SquareClass> {
    let k = same_field(a, b)?;
    square_class(&k, &(&a.rep() * &b.rep()))
}

pub fn class_eq(a: &SquareClass, b: &SquareClass) -> Result<bool> {
    class_eq_with(a, b, &SquareConfig::default())
}

pub fn class_eq_with(a: &SquareClass, b: &SquareClass, cfg: &SquareConfig) -> Result<bool> {
    let k = same_field(a, b)?;
    if let (SquareClass::Rational(x), SquareClass::Rational(y)) = (a, b) {
        return Ok(x == y);
    }
    Ok(is_square_in_with(&k, &(&a.rep() * &b.rep()), cfg)?.is_square())
}

/// `p^e` reduced to its rational square class.
pub fn prime_power_class(p: u64, e: u64) -> SquareClass {
    SquareClass::Rational(if e % 2 == 1 {
        BigInt::from(p)
    } else {
        BigInt::one()
    })
}
