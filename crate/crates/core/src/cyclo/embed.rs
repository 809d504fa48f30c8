//! Fixed-point evaluation of real cyclotomic elements at all real embeddings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::real::RealElem;

/// The real number `mantissa / 2^bits`, accurate to within `2^{-bits}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedReal {
    pub mantissa: BigInt,
    pub bits: u32,
}

impl FixedReal {
    pub fn to_f64(&self) -> f64 {
        let shift = self.mantissa.bits().saturating_sub(60);
        let top = (&self.mantissa >> shift).to_f64().unwrap_or(0.0);
        top * 2f64.powi(shift as i32 - self.bits as i32)
    }

    /// True when the interval of uncertainty lies strictly below zero.
    pub fn certainly_negative(&self) -> bool {
        self.mantissa < -BigInt::one()
    }

    pub fn certainly_positive(&self) -> bool {
        self.mantissa > BigInt::one()
    }
}

fn atan_inv(x: u64, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = one / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// `π · 2^bits`, truncated.
pub fn pi_fixed(bits: u32) -> BigInt {
    let w = bits + 32;
    let pi = BigInt::from(16) * atan_inv(5, w) - BigInt::from(4) * atan_inv(239, w);
    pi >> 32
}

/// `2cos(2πk/n) · 2^bits`, truncated.
pub fn two_cos_fixed(k: u64, n: u64, bits: u32) -> BigInt {
    let w = bits + 32;
    let mut k = k % n;
    if 2 * k > n {
        k = n - k;
    }
    let one = BigInt::one() << w;
    let t = pi_fixed(w) * BigInt::from(2 * k) / BigInt::from(n);
    let t2 = (&t * &t) >> w;
    let mut term = one.clone();
    let mut sum = one;
    let mut i = 1u64;
    loop {
        term = -((&term * &t2) >> w) / BigInt::from((2 * i - 1) * (2 * i));
        if term.is_zero() {
            break;
        }
        sum += &term;
        i += 1;
    }
    (sum << 1u32) >> 32
}

/// One approximation per real embedding, each within `2^{-precision}`.
///
/// The embeddings are ordered as [`super::RealField::embedding_indices`].
pub fn embed(e: &RealElem, precision: u32) -> Vec<FixedReal> {
    let field = e.field();
    let den = e.denominator();
    let ints: Vec<BigInt> = e
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let max_bits = ints.iter().map(|c| c.bits()).max().unwrap_or(0) as u32;
    let d = field.degree() as u32;
    let w = precision + max_bits + 3 * d + 24;
    let c = field.conductor();
    field
        .embedding_indices()
        .into_iter()
        .map(|k| {
            let x = if c == 1 {
                BigInt::zero()
            } else {
                two_cos_fixed(k, c, w)
            };
            let mut acc = BigInt::zero();
            for coef in ints.iter().rev() {
                acc = ((&acc * &x) >> w) + (coef << w);
            }
            // acc / (den · 2^w), rounded to `precision` bits
            let num = acc << precision;
            let denom = &den << w;
            let (q, r) = num.div_mod_floor(&denom);
            let mantissa = if (r << 1u32) >= denom { q + 1 } else { q };
            FixedReal {
                mantissa,
                bits: precision,
            }
        })
        .collect()
}

/// Whether some real embedding of `e` is certainly negative, refining the
/// precision up to `max_precision`. `None` when undecided.
pub(crate) fn has_negative_embedding(e: &RealElem, max_precision: u32) -> Option<bool> {
    let mut precision = 64;
    loop {
        let values = embed(e, precision);
        if values.iter().any(FixedReal::certainly_negative) {
            return Some(true);
        }
        if values.iter().all(FixedReal::certainly_positive) {
            return Some(false);
        }
        if precision >= max_precision {
            return None;
        }
        precision = (precision * 2).min(max_precision);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::real::{delta, theta, RealField};

    #[test]
    fn pi_digits() {
        let pi = pi_fixed(200);
        let expected = "3.14159265358979323846264338327950288419716939937510";
        let digits = (pi * BigInt::from(10).pow(50)) >> 200u32;
        assert_eq!(format!("3.{}", &digits.to_string()[1..]), expected);
    }

    #[test]
    fn theta_five_embeddings() {
        let v = embed(&theta(5, 1).unwrap(), 80);
        assert_eq!(v.len(), 2);
        assert!((v[0].to_f64() - 0.618_033_988_749_895).abs() < 1e-14);
        assert!((v[1].to_f64() + 1.618_033_988_749_895).abs() < 1e-14);
    }

    #[test]
    fn constants_embed_to_themselves() {
        let k = RealField::from_conductor(11).unwrap();
        for v in embed(&k.from_int(2), 64) {
            assert_eq!(v.mantissa, BigInt::from(2) << 64u32);
        }
        for v in embed(&delta(8, 1).unwrap(), 64) {
            assert!((v.to_f64() - 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn high_precision_agrees_with_doubles() {
        let k = RealField::from_conductor(13).unwrap();
        let e = &(&k.generator() * &k.generator()) - &k.from_int(3);
        for (v, idx) in embed(&e, 300).iter().zip(k.embedding_indices()) {
            assert!((v.to_f64() - e.approx(idx)).abs() < 1e-12);
        }
    }
}
