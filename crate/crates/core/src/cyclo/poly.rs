//! Dense univariate polynomials (coefficients stored low degree first) over
//! `ℤ` and `ℚ`, plus cyclotomic and real-cyclotomic minimal polynomials.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::factorize;

pub(crate) fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient of `a` by the monic `b`; panics if the division leaves a remainder.
fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

fn mobius(n: u64) -> i32 {
    let fac = factorize(n);
    if fac.iter().any(|&(_, e)| e > 1) {
        0
    } else if fac.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn x_pow_minus_one(d: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); d as usize + 1];
    p[0] = -BigInt::one();
    p[d as usize] = BigInt::one();
    p
}

/// The cyclotomic polynomial `Φ_n`.
pub fn cyclotomic(n: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache").get(&n) {
        return p.clone();
    }
    assert!(n >= 1);
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut num = vec![BigInt::one()];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            num = mul_int(&num, &x_pow_minus_one(d));
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            num = div_exact_monic(&num, &x_pow_minus_one(d));
        }
    }
    cache.lock().expect("cache").insert(n, num.clone());
    num
}

/// Dickson polynomials `D_0 = 2`, `D_1 = y`, `D_{k+1} = y D_k - D_{k-1}`,
/// so that `D_k(x + 1/x) = x^k + x^{-k}`.
pub(crate) fn dickson(k: usize) -> Vec<BigInt> {
    let mut prev = vec![BigInt::from(2)];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Minimal polynomial of `ϑ_n = μ_n + μ_n^{-1}` over `ℚ` (monic, integral).
pub fn real_minpoly(n: u64) -> Vec<BigInt> {
    match n {
        1 => return vec![BigInt::from(-2), BigInt::one()],
        2 => return vec![BigInt::from(2), BigInt::one()],
        _ => {}
    }
    let phi = cyclotomic(n);
    let d = (phi.len() - 1) / 2;
    let mut out = vec![BigInt::zero(); d + 1];
    out[0] = phi[d].clone();
    for k in 1..=d {
        let c = &phi[d + k];
        if c.is_zero() {
            continue;
        }
        for (i, dk) in dickson(k).iter().enumerate() {
            out[i] += c * dk;
        }
    }
    out
}

pub(crate) fn to_rat(p: &[BigInt]) -> Vec<BigRational> {
    p.iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

pub(crate) fn mul_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Remainder of `a` modulo the monic integral polynomial `m`, padded to length `deg m`.
pub(crate) fn reduce_rat(mut a: Vec<BigRational>, m: &[BigInt]) -> Vec<BigRational> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let c = a.pop().expect("nonempty");
        if c.is_zero() {
            continue;
        }
        let top = a.len();
        for j in 0..dm {
            if !m[j].is_zero() {
                a[top - dm + j] -= &c * BigRational::from_integer(m[j].clone());
            }
        }
    }
    a.resize(dm, BigRational::zero());
    a
}

/// Remainder of `a` modulo the monic `m` over `ℤ`, padded to length `deg m`.
pub(crate) fn reduce_int(mut a: Vec<BigInt>, m: &[BigInt]) -> Vec<BigInt> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let c = a.pop().expect("nonempty");
        if c.is_zero() {
            continue;
        }
        let top = a.len();
        for j in 0..dm {
            if !m[j].is_zero() {
                a[top - dm + j] -= &c * &m[j];
            }
        }
    }
    a.resize(dm, BigInt::zero());
    a
}

/// Division with remainder over `ℚ` (divisor nonzero).
pub(crate) fn divrem_rat(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut b = b.to_vec();
    trim(&mut b);
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lead_inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

/// Inverse of `a` modulo `m` over `ℚ`, if `gcd(a, m) = 1`.
pub(crate) fn inv_mod_rat(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
        (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem_rat(&r0, &r1);
        let qs = mul_rat(&q, &s1);
        let mut s2 = s0.clone();
        if s2.len() < qs.len() {
            s2.resize(qs.len(), BigRational::zero());
        }
        for (i, c) in qs.into_iter().enumerate() {
            s2[i] -= c;
        }
        trim(&mut s2);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    Some(s0.into_iter().map(|x| x * &c).collect())
}

pub(crate) fn max_abs_bits(p: &[BigInt]) -> u64 {
    p.iter().map(|c| c.abs().bits()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), ints(&[1, 0, -1, 0, 1]));
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic(105).iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn real_minimal_polynomials() {
        // 2cos(2π/5) satisfies y² + y - 1
        assert_eq!(real_minpoly(5), ints(&[-1, 1, 1]));
        assert_eq!(real_minpoly(8), ints(&[-2, 0, 1]));
        assert_eq!(real_minpoly(7), ints(&[-1, -2, 1, 1]));
        assert_eq!(real_minpoly(12), ints(&[-3, 0, 1]));
    }

    #[test]
    fn dickson_matches_chebyshev_values() {
        // y = 2cos(x) ⇒ D_k(y) = 2cos(kx)
        let x = 0.37f64;
        for k in 0..12 {
            let v: f64 = dickson(k)
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    c.to_string().parse::<f64>().unwrap() * (2.0 * x.cos()).powi(i as i32)
                })
                .sum();
            assert!((v - 2.0 * (k as f64 * x).cos()).abs() < 1e-9);
        }
    }

    #[test]
    fn rational_inverse() {
        let m = to_rat(&real_minpoly(7));
        let a = to_rat(&ints(&[1, 1]));
        let inv = inv_mod_rat(&a, &m).unwrap();
        let prod = reduce_rat(mul_rat(&a, &inv), &real_minpoly(7));
        assert!(prod[0].is_one() && prod[1..].iter().all(Zero::is_zero));
    }
}
