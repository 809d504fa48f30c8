//! Polynomials over a prime field `F_ℓ` (`ℓ < 2^32`), equal-degree
//! factorization, and square roots in the residue fields `F_ℓ[x]/(g)`.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{mul_mod, pow_mod};

pub(crate) type PolyP = Vec<u64>;

pub(crate) fn trim(p: &mut PolyP) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub(crate) fn inv(a: u64, l: u64) -> u64 {
    pow_mod(a, l - 2, l)
}

pub(crate) fn add(a: &[u64], b: &[u64], l: u64) -> PolyP {
    let n = a.len().max(b.len());
    let mut out: PolyP = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % l)
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[u64], b: &[u64], l: u64) -> PolyP {
    let n = a.len().max(b.len());
    let mut out: PolyP = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + l - b.get(i).copied().unwrap_or(0)) % l)
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[u64], c: u64, l: u64) -> PolyP {
    let mut out: PolyP = a.iter().map(|&x| mul_mod(x, c, l)).collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], l: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    let l128 = l as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u128 * y as u128) % l128;
        }
    }
    let mut out: PolyP = acc.into_iter().map(|v| v as u64).collect();
    trim(&mut out);
    out
}

pub(crate) fn divrem(a: &[u64], b: &[u64], l: u64) -> (PolyP, PolyP) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let db = b.len() - 1;
    let li = inv(b[db], l);
    let mut quot = vec![0u64; rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = mul_mod(rem[k + db], li, l);
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                rem[k + j] = (rem[k + j] + l - mul_mod(c, bj, l)) % l;
            }
        }
        quot[k] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn rem(a: &[u64], b: &[u64], l: u64) -> PolyP {
    divrem(a, b, l).1
}

pub(crate) fn monic(a: &[u64], l: u64) -> PolyP {
    match a.last() {
        Some(&lead) => scale(a, inv(lead, l), l),
        None => Vec::new(),
    }
}

pub(crate) fn gcd(a: &[u64], b: &[u64], l: u64) -> PolyP {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, l);
        x = std::mem::replace(&mut y, r);
    }
    monic(&x, l)
}

/// Inverse of `a` modulo `m`, if coprime.
pub(crate) fn inv_mod(a: &[u64], m: &[u64], l: u64) -> Option<PolyP> {
    let (mut r0, mut r1) = (m.to_vec(), rem(a, m, l));
    let (mut s0, mut s1): (PolyP, PolyP) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, l);
        let s2 = sub(&s0, &mul(&q, &s1, l), l);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    Some(rem(&scale(&s0, inv(r0[0], l), l), m, l))
}

pub(crate) fn mulmod(a: &[u64], b: &[u64], m: &[u64], l: u64) -> PolyP {
    rem(&mul(a, b, l), m, l)
}

pub(crate) fn powmod(a: &[u64], e: &BigUint, m: &[u64], l: u64) -> PolyP {
    let mut acc: PolyP = rem(&[1], m, l);
    let base = rem(a, m, l);
    for i in (0..e.bits()).rev() {
        acc = mulmod(&acc, &acc, m, l);
        if e.bit(i) {
            acc = mulmod(&acc, &base, m, l);
        }
    }
    acc
}

fn random_poly(deg: usize, l: u64, rng: &mut ChaCha8Rng) -> PolyP {
    let mut p: PolyP = (0..deg).map(|_| rng.gen_range(0..l)).collect();
    trim(&mut p);
    p
}

/// Splits a squarefree monic `f` (odd `ℓ`) whose irreducible factors all have
/// degree `k` into those factors.
pub(crate) fn equal_degree_factor(f: &[u64], k: usize, l: u64, rng: &mut ChaCha8Rng) -> Vec<PolyP> {
    let n = f.len() - 1;
    if n == k {
        return vec![f.to_vec()];
    }
    let e = (BigUint::from(l).pow(k as u32) - BigUint::one()) >> 1u32;
    loop {
        let a = random_poly(n, l, rng);
        if a.len() < 2 {
            continue;
        }
        let b = sub(&powmod(&a, &e, f, l), &[1], l);
        let g = gcd(&b, f, l);
        if g.len() > 1 && g.len() < f.len() {
            let (h, _) = divrem(f, &g, l);
            let mut out = equal_degree_factor(&g, k, l, rng);
            out.extend(equal_degree_factor(&monic(&h, l), k, l, rng));
            return out;
        }
    }
}

/// Arithmetic in the residue field `F_ℓ[x]/(g)` with `g` irreducible.
pub(crate) struct ResidueField<'a> {
    pub g: &'a [u64],
    pub l: u64,
}

impl ResidueField<'_> {
    fn order_minus_one(&self) -> BigUint {
        BigUint::from(self.l).pow((self.g.len() - 1) as u32) - BigUint::one()
    }

    pub fn is_square(&self, a: &[u64]) -> bool {
        let a = rem(a, self.g, self.l);
        if a.is_empty() {
            return true;
        }
        powmod(&a, &(self.order_minus_one() >> 1u32), self.g, self.l) == vec![1]
    }

    /// A square root of the nonzero square `a` (Tonelli-Shanks).
    pub fn sqrt(&self, a: &[u64], rng: &mut ChaCha8Rng) -> PolyP {
        let (g, l) = (self.g, self.l);
        let a = rem(a, g, l);
        let qm1 = self.order_minus_one();
        let s = qm1.trailing_zeros().unwrap_or(0);
        let t = &qm1 >> s;
        let z = loop {
            let c = random_poly(g.len() - 1, l, rng);
            if !c.is_empty() && !self.is_square(&c) {
                break c;
            }
        };
        let mut m = s;
        let mut c = powmod(&z, &t, g, l);
        let mut x = powmod(&a, &((&t + BigUint::one()) >> 1u32), g, l);
        let mut b = powmod(&a, &t, g, l);
        let one: PolyP = vec![1];
        while b != one {
            let mut i = 0;
            let mut b2 = b.clone();
            while b2 != one {
                b2 = mulmod(&b2, &b2, g, l);
                i += 1;
            }
            let mut w = c.clone();
            for _ in 0..(m - i - 1) {
                w = mulmod(&w, &w, g, l);
            }
            x = mulmod(&x, &w, g, l);
            c = mulmod(&w, &w, g, l);
            b = mulmod(&b, &c, g, l);
            m = i;
        }
        x
    }
}

pub(crate) fn from_bigint_coeffs(p: &[num_bigint::BigInt], l: u64) -> PolyP {
    use num_traits::ToPrimitive;
    let lb = num_bigint::BigInt::from(l);
    let mut out: PolyP = p
        .iter()
        .map(|c| {
            let r = ((c % &lb) + &lb) % &lb;
            r.to_u64().expect("residue fits")
        })
        .collect();
    trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factor_x4_minus_1() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // x^4 - 1 over F_13 splits into linear factors
        let f = vec![12, 0, 0, 0, 1];
        let mut roots: Vec<u64> = equal_degree_factor(&f, 1, 13, &mut rng)
            .into_iter()
            .map(|g| (13 - g[0]) % 13)
            .collect();
        roots.sort();
        assert_eq!(roots, vec![1, 5, 8, 12]);
    }

    #[test]
    fn quadratic_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // Φ_5 over F_11 ... 11 ≡ 1 mod 5 splits; over F_19 (19 ≡ 4 mod 5) quadratic factors
        let f = vec![1, 1, 1, 1, 1];
        let parts = equal_degree_factor(&f, 2, 19, &mut rng);
        assert_eq!(parts.len(), 2);
        let prod = mul(&parts[0], &parts[1], 19);
        assert_eq!(prod, f);
    }

    #[test]
    fn tonelli_in_extension() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // F_49 = F_7[x]/(x^2 + 1)
        let g = vec![1, 0, 1];
        let k = ResidueField { g: &g, l: 7 };
        for a0 in 0..7u64 {
            for a1 in 0..7u64 {
                let mut a = vec![a0, a1];
                trim(&mut a);
                if a.is_empty() {
                    continue;
                }
                let sq = mulmod(&a, &a, &g, 7);
                assert!(k.is_square(&sq));
                let r = k.sqrt(&sq, &mut rng);
                assert_eq!(mulmod(&r, &r, &g, 7), sq);
            }
        }
        let squares = (1..49u64)
            .filter(|&c| {
                let mut a = vec![c % 7, c / 7];
                trim(&mut a);
                k.is_square(&a)
            })
            .count();
        assert_eq!(squares, 24);
    }

    #[test]
    fn inverse_mod() {
        let m = vec![1, 1, 1];
        let a = vec![2, 3];
        let i = inv_mod(&a, &m, 5).unwrap();
        assert_eq!(mulmod(&a, &i, &m, 5), vec![1]);
    }
}
