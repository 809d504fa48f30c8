//! Full cyclotomic fields `ℚ(μ_n)` and their square test, by descent to the
//! real subfield `K = ℚ(ϑ_n)`: with `s = μ_n - μ_n^{-1}` and `D = s² = ϑ_n² - 4`,
//! every element is `a + b·s` with `a, b ∈ K`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly;
use super::real::{RealElem, RealField};
use super::square::{is_square_in_with, SquareConfig, SquareTest};
use crate::error::{Error, Result};

/// An element of `ℚ(μ_n)` in the power basis of `μ_n`, reduced modulo `Φ_n`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloElem {
    n: u64,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in Q(mu_{})", self.n)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                _ => format!("({c})*mu_{}^{i}", self.n),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn phi_degree(n: u64) -> usize {
    poly::cyclotomic(n).len() - 1
}

impl CycloElem {
    pub fn new(n: u64, coeffs: Vec<BigRational>) -> CycloElem {
        let reduced = poly::reduce_rat(coeffs, &poly::cyclotomic(n));
        CycloElem { n, coeffs: reduced }
    }

    pub fn from_int_coeffs(n: u64, coeffs: &[BigInt]) -> CycloElem {
        Self::new(n, poly::to_rat(coeffs))
    }

    pub fn zero(n: u64) -> CycloElem {
        CycloElem {
            n,
            coeffs: vec![BigRational::zero(); phi_degree(n)],
        }
    }

    pub fn from_rational(n: u64, r: BigRational) -> CycloElem {
        let mut e = Self::zero(n);
        e.coeffs[0] = r;
        e
    }

    pub fn from_int(n: u64, v: i64) -> CycloElem {
        Self::from_rational(n, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn one(n: u64) -> CycloElem {
        Self::from_int(n, 1)
    }

    /// `μ_n^k`.
    pub fn mu(n: u64, k: i64) -> CycloElem {
        let e = k.rem_euclid(n as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Self::new(n, c)
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Complex conjugation `μ ↦ μ^{-1}`.
    pub fn conj(&self) -> CycloElem {
        let mut acc = Self::zero(self.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &Self::mu(self.n, -(i as i64)).scale(c);
            }
        }
        acc
    }

    pub fn scale(&self, r: &BigRational) -> CycloElem {
        CycloElem {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> CycloElem {
        let mut acc = Self::one(self.n);
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

    /// Embeds an element of `ℚ(ϑ_c)` with `c | n`.
    pub fn from_real(e: &RealElem, n: u64) -> Result<CycloElem> {
        let c = e.field().conductor();
        if !n.is_multiple_of(c) {
            return Err(Error::Contract(format!(
                "{} is not contained in Q(mu_{n})",
                e.field()
            )));
        }
        let step = (n / c) as i64;
        let gen = &Self::mu(n, step) + &Self::mu(n, -step);
        let mut acc = Self::zero(n);
        for coef in e.coeffs().iter().rev() {
            acc = &(&acc * &gen) + &Self::from_rational(n, coef.clone());
        }
        Ok(acc)
    }

    /// Writes the element as `a + b·(μ_n - μ_n^{-1})` over `ℚ(ϑ_n)`.
    pub fn real_parts(&self) -> Result<(RealElem, RealElem)> {
        let n = self.n;
        let k = RealField::from_theta_capped(n, 1, u64::MAX)?;
        let theta = k.theta(n, 1)?;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let (mut a, mut b) = (k.zero(), k.zero());
        let (mut e_prev, mut e_cur) = (k.zero(), k.one());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 1 {
                let next = &(&theta * &e_cur) - &e_prev;
                e_prev = std::mem::replace(&mut e_cur, next);
            }
            if c.is_zero() {
                continue;
            }
            let ci = c * &half;
            a = &a + &k.theta(n, i as i64)?.scale(&ci);
            if i > 0 {
                b = &b + &e_cur.scale(&ci);
            }
        }
        Ok((a, b))
    }
}

impl Add for &CycloElem {
    type Output = CycloElem;
    fn add(self, rhs: &CycloElem) -> CycloElem {
        assert_eq!(self.n, rhs.n, "mixed cyclotomic fields");
        CycloElem {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CycloElem {
    type Output = CycloElem;
    fn sub(self, rhs: &CycloElem) -> CycloElem {
        assert_eq!(self.n, rhs.n, "mixed cyclotomic fields");
        CycloElem {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: &CycloElem) -> CycloElem {
        assert_eq!(self.n, rhs.n, "mixed cyclotomic fields");
        CycloElem::new(self.n, poly::mul_rat(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        self.scale(&-BigRational::one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CmSquareTest {
    Square(CycloElem),
    NonSquare,
}

impl CmSquareTest {
    pub fn is_square(&self) -> bool {
        matches!(self, CmSquareTest::Square(_))
    }
}

pub fn is_square_in_cyclo(e: &CycloElem) -> Result<CmSquareTest> {
    is_square_in_cyclo_with(e, &SquareConfig::default())
}

pub fn is_square_in_cyclo_with(e: &CycloElem, cfg: &SquareConfig) -> Result<CmSquareTest> {
    if e.is_zero() {
        return Err(Error::Contract("square test of zero".into()));
    }
    let n = e.n;
    let lift = |x: &RealElem| CycloElem::from_real(x, n);
    if n <= 2 {
        let k = RealField::rational();
        return Ok(
            match is_square_in_with(&k, &k.from_rational(e.coeffs[0].clone()), cfg)? {
                SquareTest::Square(w) => CmSquareTest::Square(lift(&w)?),
                SquareTest::NonSquare(_) => CmSquareTest::NonSquare,
            },
        );
    }
    let k = RealField::from_theta_capped(n, 1, u64::MAX)?;
    let (a, b) = e.real_parts()?;
    let theta = k.theta(n, 1)?;
    let disc = &(&theta * &theta) - &k.from_int(4);
    let s = &CycloElem::mu(n, 1) - &CycloElem::mu(n, -1);
    let verify = |w: CycloElem| -> Result<CmSquareTest> {
        if &(&w * &w) == e {
            Ok(CmSquareTest::Square(w))
        } else {
            Err(Error::Consistency(
                "cyclotomic square-root witness failed verification".into(),
            ))
        }
    };
    if b.is_zero() {
        if let SquareTest::Square(x) = is_square_in_with(&k, &a, cfg)? {
            return verify(lift(&x)?);
        }
        let ratio = &a * &disc.inv()?;
        if let SquareTest::Square(y) = is_square_in_with(&k, &ratio, cfg)? {
            return verify(&lift(&y)? * &s);
        }
        return Ok(CmSquareTest::NonSquare);
    }
    let norm = &(&a * &a) - &(&(&b * &b) * &disc);
    let n0 = match is_square_in_with(&k, &norm, cfg)? {
        SquareTest::Square(r) => r,
        SquareTest::NonSquare(_) => return Ok(CmSquareTest::NonSquare),
    };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for t in [(&a + &n0).scale(&half), (&a - &n0).scale(&half)] {
        if t.is_zero() {
            continue;
        }
        if let SquareTest::Square(x) = is_square_in_with(&k, &t, cfg)? {
            let y = &b * &x.scale(&BigRational::from_integer(BigInt::from(2))).inv()?;
            return verify(&lift(&x)? + &(&lift(&y)? * &s));
        }
    }
    Ok(CmSquareTest::NonSquare)
}

/// Whether `a·b` is a square in `ℚ(μ_n)`.
pub fn class_eq_cyclo(a: &CycloElem, b: &CycloElem) -> Result<bool> {
    class_eq_cyclo_with(a, b, &SquareConfig::default())
}

pub fn class_eq_cyclo_with(a: &CycloElem, b: &CycloElem, cfg: &SquareConfig) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::Contract(format!(
            "classes over Q(mu_{}) and Q(mu_{})",
            a.n, b.n
        )));
    }
    Ok(is_square_in_cyclo_with(&(a * b), cfg)?.is_square())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::real::theta;

    fn int(n: u64, v: i64) -> CycloElem {
        CycloElem::from_int(n, v)
    }

    #[test]
    fn roots_of_unity() {
        let i = CycloElem::mu(4, 1);
        assert_eq!(&i * &i, int(4, -1));
        let z = CycloElem::mu(12, 1);
        assert_eq!(z.pow(12), int(12, 1));
        assert_eq!(&z * &z.conj(), int(12, 1));
    }

    #[test]
    fn real_parts_reassemble() {
        for n in [5u64, 7, 8, 9, 12, 15] {
            let e = &(&CycloElem::mu(n, 1).scale(&BigRational::from_integer(3.into()))
                + &CycloElem::mu(n, 2))
                - &int(n, 4);
            let (a, b) = e.real_parts().unwrap();
            let s = &CycloElem::mu(n, 1) - &CycloElem::mu(n, -1);
            let back = &CycloElem::from_real(&a, n).unwrap()
                + &(&CycloElem::from_real(&b, n).unwrap() * &s);
            assert_eq!(back, e, "n={n}");
        }
    }

    #[test]
    fn gaussian_squares() {
        // 2i = (1+i)², -1 = i², 5 is not a square in ℚ(i), -4 = (2i)²
        let i = CycloElem::mu(4, 1);
        assert!(
            is_square_in_cyclo(&i.scale(&BigRational::from_integer(2.into())))
                .unwrap()
                .is_square()
        );
        assert!(is_square_in_cyclo(&int(4, -1)).unwrap().is_square());
        assert!(!is_square_in_cyclo(&int(4, 5)).unwrap().is_square());
        assert!(is_square_in_cyclo(&int(4, -4)).unwrap().is_square());
        assert!(class_eq_cyclo(&int(4, 20), &int(4, -5)).unwrap());
        assert!(!is_square_in_cyclo(&i).unwrap().is_square());
    }

    #[test]
    fn cyclotomic_round_trip() {
        for n in [3u64, 5, 7, 8, 9, 12, 16, 20] {
            let w = &(&CycloElem::mu(n, 1) + &int(n, 2))
                - &CycloElem::mu(n, 3).scale(&BigRational::from_integer(5.into()));
            match is_square_in_cyclo(&(&w * &w)).unwrap() {
                CmSquareTest::Square(r) => assert!(r == w || r == -&w, "n={n}"),
                CmSquareTest::NonSquare => panic!("n={n}"),
            }
        }
    }

    #[test]
    fn real_embedding_consistent() {
        let t = theta(12, 1).unwrap();
        let c = CycloElem::from_real(&t, 12).unwrap();
        assert_eq!(c, &CycloElem::mu(12, 1) + &CycloElem::mu(12, -1));
        // ϑ_12² = 3 is a square in ℚ(μ_12) ⊇ ℚ(√3)
        assert!(is_square_in_cyclo(&int(12, 3)).unwrap().is_square());
        assert!(is_square_in_cyclo(&int(12, -3)).unwrap().is_square());
        assert!(!is_square_in_cyclo(&int(12, 2)).unwrap().is_square());
    }
}
