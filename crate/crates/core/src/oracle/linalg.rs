//! Exact determinants: fraction-free elimination over `ℤ` and multi-modular
//! determinants over `ℤ[μ_n]` for matrices whose entries are `0` or roots of unity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{factorize, inv_mod, is_prime, mul_mod, pow_mod};
use crate::cyclo::CycloElem;
use crate::error::{Error, Result};

/// Determinant of an integer matrix by Bareiss elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn inv_p(a: u64, l: u64) -> u64 {
    pow_mod(a, l - 2, l)
}

/// Determinant modulo a prime `l`.
pub fn det_mod(mut m: Vec<Vec<u64>>, l: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if piv != k {
            m.swap(piv, k);
            det = (l - det) % l;
        }
        det = mul_mod(det, m[k][k], l);
        let inv = inv_p(m[k][k], l);
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let f = mul_mod(row[k], inv, l);
            if f == 0 {
                continue;
            }
            for j in k..n {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + l - mul_mod(f, pivot_row[j], l)) % l;
                }
            }
        }
    }
    det
}

/// Solves `A x = b` modulo `l` for invertible `A`.
fn solve_mod(mut a: Vec<Vec<u64>>, mut b: Vec<u64>, l: u64) -> Option<Vec<u64>> {
    let n = a.len();
    for k in 0..n {
        let piv = (k..n).find(|&i| a[i][k] != 0)?;
        a.swap(piv, k);
        b.swap(piv, k);
        let inv = inv_p(a[k][k], l);
        for x in &mut a[k][k..n] {
            *x = mul_mod(*x, inv, l);
        }
        b[k] = mul_mod(b[k], inv, l);
        for i in 0..n {
            if i != k && a[i][k] != 0 {
                let f = a[i][k];
                let pivot = a[k].clone();
                for (x, &y) in a[i][k..n].iter_mut().zip(&pivot[k..n]) {
                    *x = (*x + l - mul_mod(f, y, l)) % l;
                }
                b[i] = (b[i] + l - mul_mod(f, b[k], l)) % l;
            }
        }
    }
    Some(b)
}

/// An element of exact order `n` in `F_l^×`, where `n | l - 1`.
fn root_of_unity(n: u64, l: u64) -> u64 {
    let primes: Vec<u64> = factorize(n).into_iter().map(|(p, _)| p).collect();
    (2..l)
        .map(|x| pow_mod(x, (l - 1) / n, l))
        .find(|&z| primes.iter().all(|&p| pow_mod(z, n / p, l) != 1))
        .unwrap_or(1)
}

/// Primes `l ≡ 1 mod n` below `2^62`, descending.
fn primes_one_mod(n: u64) -> impl Iterator<Item = u64> {
    let top = (1u64 << 62) / n;
    (1..top)
        .rev()
        .map(move |k| k * n + 1)
        .filter(|&l| is_prime(l))
}

fn euler_phi_units(n: u64) -> Vec<u64> {
    (0..n.max(1)).filter(|&k| k.gcd(&n.max(1)) == 1).collect()
}

/// `Σ_i ½·log₂(Σ_j |a_ij|²)` for a matrix with unit-modulus nonzero entries.
pub fn hadamard_bits(nonzeros_per_row: &[usize]) -> u64 {
    nonzeros_per_row
        .iter()
        .map(|&c| 0.5 * (c.max(1) as f64).log2())
        .sum::<f64>()
        .ceil() as u64
}

/// Determinant of the `d × d` matrix with entries `μ_n^{e}` (or `0` for
/// `None`) as an element of `ℚ(μ_n)`.
///
/// The determinant is evaluated at every primitive `n`-th root of unity
/// modulo primes `l ≡ 1 mod n`, interpolated in the power basis, and
/// reconstructed by Chinese remaindering beyond a Hadamard-type bound; one
/// further prime must leave the result unchanged.
pub fn cyclotomic_det(
    n: u64,
    d: usize,
    entry: impl Fn(usize, usize) -> Option<u64> + Sync,
) -> Result<CycloElem> {
    let units = euler_phi_units(n);
    let phi = units.len();
    let rows: Vec<usize> = (0..d)
        .map(|i| (0..d).filter(|&j| entry(i, j).is_some()).count())
        .collect();
    let bound_bits = hadamard_bits(&rows) + (phi as u64) * (64 - n.leading_zeros() as u64) + 64;
    let mut modulus = BigInt::one();
    let mut residues = vec![BigInt::zero(); phi];
    let mut last: Option<Vec<BigInt>> = None;
    for l in primes_one_mod(n).take(4096) {
        let zeta = root_of_unity(n.max(1), l);
        let powers: Vec<u64> = (0..n.max(1)).map(|k| pow_mod(zeta, k, l)).collect();
        let values: Vec<u64> = units
            .iter()
            .map(|&k| {
                let m: Vec<Vec<u64>> = (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|j| {
                                entry(i, j).map_or(0, |e| powers[((e * k) % n.max(1)) as usize])
                            })
                            .collect()
                    })
                    .collect();
                det_mod(m, l)
            })
            .collect();
        let vander: Vec<Vec<u64>> = units
            .iter()
            .map(|&k| {
                (0..phi as u64)
                    .map(|i| powers[((k * i) % n.max(1)) as usize])
                    .collect()
            })
            .collect();
        let coeffs = solve_mod(vander, values, l)
            .ok_or_else(|| Error::Consistency("singular interpolation system".into()))?;
        let lb = BigInt::from(l);
        let m_inv = inv_mod((&modulus % &lb).try_into().unwrap_or(0), l as i64)
            .ok_or_else(|| Error::Consistency("non-coprime moduli".into()))?;
        for (r, &c) in residues.iter_mut().zip(&coeffs) {
            let cur = (&*r % &lb + &lb) % &lb;
            let diff = (BigInt::from(c) - cur + &lb) % &lb;
            let t = (diff * BigInt::from(m_inv)) % &lb;
            *r += &modulus * t;
        }
        modulus *= &lb;
        if modulus.bits() > bound_bits {
            let half = &modulus >> 1u32;
            let symmetric: Vec<BigInt> = residues
                .iter()
                .map(|r| if r > &half { r - &modulus } else { r.clone() })
                .collect();
            if last.as_ref() == Some(&symmetric) {
                return Ok(CycloElem::from_int_coeffs(n.max(1), &symmetric));
            }
            last = Some(symmetric);
        }
    }
    Err(Error::Capacity(
        "ran out of primes for the modular determinant".into(),
    ))
}
