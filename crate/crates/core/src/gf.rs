//! Finite fields `F_p ⊆ F_q ⊆ F_{q^2}` realized as single polynomial quotients
//! `F_p[x]/(m)` with `m` the lexicographically least monic irreducible of the
//! required degree.
//!
//! Elements are stored as the integer `Σ c_i p^i` of their coefficient vector
//! (low degree first). Fields of size at most [`TABLE_LIMIT`] carry
//! exponential/logarithm tables for multiplication.

use std::fmt;
use std::sync::Arc;

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

/// Default cap on `q`.
pub const DEFAULT_MAX_Q: u64 = 1 << 16;

/// Fields up to this size get log tables.
pub const TABLE_LIMIT: u64 = 1 << 16;

/// Element of a finite field, encoded by its coefficient vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FFElem(pub(crate) u64);

impl FFElem {
    pub const ZERO: FFElem = FFElem(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The integer code `Σ c_i p^i`.
    pub fn code(self) -> u64 {
        self.0
    }
}

#[derive(Debug)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field of size `q^ext_degree` where `q = p^f`.
#[derive(Clone)]
pub struct FieldSpec {
    p: u64,
    f: u32,
    q: u64,
    ext_degree: u32,
    degree: usize,
    size: u64,
    modulus: Vec<u64>,
    generator: FFElem,
    tables: Option<Arc<LogTables>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("f", &self.f)
            .field("ext_degree", &self.ext_degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// Builds `F_{q^ext_degree}` with `q = p^f` under the default cap on `q`.
pub fn make_field(p: u64, f: u32, ext_degree: u32) -> Result<FieldSpec> {
    make_field_capped(p, f, ext_degree, DEFAULT_MAX_Q)
}

pub fn make_field_capped(p: u64, f: u32, ext_degree: u32, max_q: u64) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::Parameter(format!("p = {p} is not prime")));
    }
    if f == 0 {
        return Err(Error::Parameter("exponent f must be positive".into()));
    }
    if !(1..=2).contains(&ext_degree) {
        return Err(Error::Parameter(format!(
            "extension degree must be 1 or 2, got {ext_degree}"
        )));
    }
    let q = p
        .checked_pow(f)
        .filter(|&q| q <= max_q)
        .ok_or_else(|| Error::Capacity(format!("q = {p}^{f} exceeds the cap {max_q}")))?;
    let degree = (f * ext_degree) as usize;
    let size = q
        .checked_pow(ext_degree)
        .filter(|&s| s <= u32::MAX as u64 + 1)
        .ok_or_else(|| Error::Capacity(format!("field of size {q}^{ext_degree} too large")))?;
    let modulus = least_irreducible(p, degree);
    let mut field = FieldSpec {
        p,
        f,
        q,
        ext_degree,
        degree,
        size,
        modulus,
        generator: FFElem(0),
        tables: None,
    };
    field.generator = field.find_generator();
    if size <= TABLE_LIMIT {
        let order = (size - 1) as usize;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0u32; size as usize];
        let mut x = field.one();
        for i in 0..order {
            exp.push(x.0 as u32);
            log[x.0 as usize] = i as u32;
            x = field.mul_poly(x, field.generator);
        }
        field.tables = Some(Arc::new(LogTables { exp, log }));
    }
    Ok(field)
}

/// Deterministic primitive root of the multiplicative group.
pub fn generator(field: &FieldSpec) -> FFElem {
    field.generator
}

/// The Frobenius `x ↦ x^q` of `F_{q^2}`.
pub fn frobenius(field: &FieldSpec, x: FFElem) -> Result<FFElem> {
    if field.ext_degree != 2 {
        return Err(Error::Contract(
            "frobenius x -> x^q is defined on the quadratic extension only".into(),
        ));
    }
    Ok(field.pow(x, field.q))
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn ext_degree(&self) -> u32 {
        self.ext_degree
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Monic modulus, coefficients low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> FFElem {
        self.generator
    }

    pub fn zero(&self) -> FFElem {
        FFElem(0)
    }

    pub fn one(&self) -> FFElem {
        FFElem(1)
    }

    /// Image of an integer under `Z -> F_p`.
    pub fn from_int(&self, n: i64) -> FFElem {
        FFElem(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn elem_from_code(&self, code: u64) -> Result<FFElem> {
        if code >= self.size {
            return Err(Error::Contract(format!(
                "code {code} outside field of size {}",
                self.size
            )));
        }
        Ok(FFElem(code))
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FFElem> {
        if coeffs.len() > self.degree || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Contract("coefficient vector not reduced".into()));
        }
        Ok(FFElem(self.encode(coeffs)))
    }

    pub fn coeffs(&self, x: FFElem) -> Vec<u64> {
        self.decode(x)
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> {
        (0..self.size).map(FFElem)
    }

    fn decode(&self, x: FFElem) -> Vec<u64> {
        let mut out = vec![0u64; self.degree];
        let mut v = x.0;
        for c in out.iter_mut() {
            *c = v % self.p;
            v /= self.p;
        }
        out
    }

    fn encode(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: FFElem, b: FFElem) -> FFElem {
        if self.p == 2 {
            return FFElem(a.0 ^ b.0);
        }
        if self.degree == 1 {
            return FFElem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut acc, mut place) = (0u64, 1u64);
        while x > 0 || y > 0 {
            acc += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FFElem(acc)
    }

    pub fn neg(&self, a: FFElem) -> FFElem {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let (mut acc, mut place) = (0u64, 1u64);
        while x > 0 {
            acc += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FFElem(acc)
    }

    pub fn sub(&self, a: FFElem, b: FFElem) -> FFElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FFElem, b: FFElem) -> FFElem {
        if a.is_zero() || b.is_zero() {
            return FFElem(0);
        }
        match &self.tables {
            Some(t) => {
                let order = self.size - 1;
                let k = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % order;
                FFElem(t.exp[k as usize] as u64)
            }
            None => self.mul_poly(a, b),
        }
    }

    fn mul_poly(&self, a: FFElem, b: FFElem) -> FFElem {
        let prod = poly_mulmod(&self.decode(a), &self.decode(b), &self.modulus, self.p);
        FFElem(self.encode(&prod))
    }

    pub fn pow(&self, a: FFElem, e: u64) -> FFElem {
        if e == 0 {
            return self.one();
        }
        if a.is_zero() {
            return a;
        }
        if let Some(t) = &self.tables {
            let order = self.size - 1;
            let k = (t.log[a.0 as usize] as u128 * e as u128 % order as u128) as usize;
            return FFElem(t.exp[k] as u64);
        }
        let (mut base, mut exp, mut acc) = (a, e, self.one());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FFElem) -> Result<FFElem> {
        if a.is_zero() {
            return Err(Error::Contract("inverse of zero".into()));
        }
        Ok(self.pow(a, self.size - 2))
    }

    /// Discrete logarithm to the base [`FieldSpec::generator`].
    pub fn log(&self, a: FFElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::Contract("logarithm of zero".into()));
        }
        if let Some(t) = &self.tables {
            return Ok(t.log[a.0 as usize] as u64);
        }
        let mut x = self.one();
        for k in 0..self.size - 1 {
            if x == a {
                return Ok(k);
            }
            x = self.mul_poly(x, self.generator);
        }
        Err(Error::Consistency("generator does not generate".into()))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FFElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::Contract("order of zero".into()));
        }
        let mut order = self.size - 1;
        for (r, _) in factorize(self.size - 1) {
            while order.is_multiple_of(r) && self.pow(a, order / r) == self.one() {
                order /= r;
            }
        }
        Ok(order)
    }

    fn find_generator(&self) -> FFElem {
        let order = self.size - 1;
        if order == 1 {
            return self.one();
        }
        let primes: Vec<u64> = factorize(order).into_iter().map(|(r, _)| r).collect();
        (1..self.size)
            .map(FFElem)
            .find(|&g| primes.iter().all(|&r| self.pow(g, order / r) != self.one()))
            .expect("multiplicative group of a finite field is cyclic")
    }
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = crate::arith::pow_mod(m[dm], p - 2, p);
    while r.len() > dm && !r.is_empty() {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mc) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mc % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = poly_rem(&poly_mul(a, b, p), m, p);
    r.resize(m.len() - 1, 0);
    r
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test over `F_p`.
pub(crate) fn is_irreducible(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    if n == 1 {
        return true;
    }
    if m[0] == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    let mut xp = x.clone();
    for _ in 0..n / 2 {
        xp = poly_powmod(&xp, p, m, p);
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(m, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `n`, comparing
/// coefficient vectors `(c_0, ..., c_{n-1})` from the constant term upwards.
fn least_irreducible(p: u64, n: usize) -> Vec<u64> {
    let count = p.pow(n as u32);
    (0..count)
        .map(|k| {
            let mut coeffs = vec![0u64; n + 1];
            let mut v = k;
            for i in (0..n).rev() {
                coeffs[i] = v % p;
                v /= p;
            }
            coeffs[n] = 1;
            coeffs
        })
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_of_two() {
        let f = make_field(2, 1, 1).unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(generator(&f), f.one());
    }

    #[test]
    fn field_of_four_has_order_three_generator() {
        let f = make_field(2, 2, 1).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let g = generator(&f);
        let nonzero: Vec<FFElem> = f.elements().skip(1).collect();
        assert_eq!(nonzero.len(), 3);
        let mut x = g;
        let mut order = 1;
        while x != f.one() {
            x = f.mul(x, g);
            order += 1;
        }
        assert_eq!(order, 3);
    }

    #[test]
    fn nine_element_field_fixes_prime_subfield() {
        let f = make_field(3, 1, 2).unwrap();
        assert_eq!(f.size(), 9);
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let fixed: Vec<FFElem> = f
            .elements()
            .filter(|&x| frobenius(&f, x).unwrap() == x)
            .collect();
        assert_eq!(fixed, vec![f.from_int(0), f.from_int(1), f.from_int(2)]);
        let tau = generator(&f);
        let ft = frobenius(&f, tau).unwrap();
        assert_eq!(ft, f.pow(tau, 3));
        assert_eq!(frobenius(&f, ft).unwrap(), tau);
        assert_eq!(frobenius(&f, f.zero()).unwrap(), f.zero());
    }

    #[test]
    fn generator_of_25_has_order_24() {
        let f = make_field(5, 2, 1).unwrap();
        let g = generator(&f);
        let mut x = f.one();
        let mut order = 0;
        loop {
            x = f.mul(x, g);
            order += 1;
            if x == f.one() {
                break;
            }
        }
        assert_eq!(order, 24);
    }

    #[test]
    fn frobenius_needs_quadratic_extension() {
        let f = make_field(5, 1, 1).unwrap();
        assert!(matches!(frobenius(&f, f.one()), Err(Error::Contract(_))));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(make_field(4, 1, 1), Err(Error::Parameter(_))));
        assert!(matches!(make_field(3, 0, 1), Err(Error::Parameter(_))));
        assert!(matches!(make_field(2, 17, 1), Err(Error::Capacity(_))));
        assert!(matches!(
            make_field_capped(7, 2, 1, 10),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn inverses_exhaustive() {
        for (p, f, e) in [
            (2, 1, 2),
            (3, 2, 2),
            (2, 3, 2),
            (5, 1, 2),
            (7, 1, 2),
            (2, 4, 1),
        ] {
            let field = make_field(p, f, e).unwrap();
            for a in field.elements().skip(1) {
                assert_eq!(field.mul(a, field.inv(a).unwrap()), field.one());
            }
        }
    }

    #[test]
    fn untabled_field_agrees_with_generic_arithmetic() {
        // 3^12 > TABLE_LIMIT, so this exercises the polynomial path.
        let f = make_field(3, 6, 2).unwrap();
        assert!(f.tables.is_none());
        let g = generator(&f);
        assert_eq!(f.order(g).unwrap(), f.size() - 1);
        let a = f.pow(g, 12345);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        assert_eq!(frobenius(&f, frobenius(&f, a).unwrap()).unwrap(), a);
    }

    #[test]
    fn moduli_are_irreducible_of_right_degree() {
        for (p, f, e) in [(2, 1, 1), (2, 3, 2), (3, 2, 2), (13, 1, 2), (11, 2, 1)] {
            let field = make_field(p, f, e).unwrap();
            let m = field.modulus();
            assert_eq!(m.len() as u32 - 1, f * e);
            assert!(is_irreducible(m, p));
        }
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(!is_irreducible(&[2, 0, 0, 1], 3));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn frobenius_is_a_field_automorphism(a in 0u64..625, b in 0u64..625) {
                let f = make_field(5, 2, 2).unwrap();
                let (a, b) = (FFElem(a), FFElem(b));
                let fr = |x| frobenius(&f, x).unwrap();
                prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
                prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
                prop_assert_eq!(fr(fr(a)), a);
            }

            #[test]
            fn inverses_in_large_field(k in 0u64..(1 << 20)) {
                let f = make_field(2, 11, 2).unwrap();
                let a = f.pow(f.generator(), k);
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                prop_assert_eq!(f.sub(f.add(a, f.one()), f.one()), a);
            }
        }
    }
}
