//! `SL_3(q)` and `SU_3(q)` as explicit matrix groups, with the standard Borel
//! subgroup `B = U ⋊ T`, the maximal parabolic `P`, and coset actions built
//! from projective geometry.

mod coset;
mod enumerate;
mod unipotent;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf::{self, FFElem, FieldSpec};

pub use coset::{coset_action, count_isotropic_points, u_orbit_count, CosetAction, Stabilizer};
pub use enumerate::{brute_force_order, enumerate_group, GroupElements};
pub use unipotent::{
    enumerate_unipotent_class_counts, enumerate_unipotent_radical, unipotent_class_counts,
    UnipotentCounts,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    SL,
    SU,
}

impl Family {
    /// `+1` for `SL`, `-1` for `SU`.
    pub fn epsilon(self) -> i64 {
        match self {
            Family::SL => 1,
            Family::SU => -1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::SL => "SL",
            Family::SU => "SU",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "SL" => Ok(Family::SL),
            "SU" => Ok(Family::SU),
            other => Err(Error::Parameter(format!(
                "unknown family '{other}' (expected SL or SU)"
            ))),
        }
    }
}

/// 3×3 matrix, row major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat3(pub [FFElem; 9]);

impl Mat3 {
    pub fn at(&self, i: usize, j: usize) -> FFElem {
        self.0[3 * i + j]
    }
}

/// Which of `B`, `U`, `T`, `P` contain a group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SubgroupFlags {
    pub in_b: bool,
    pub in_u: bool,
    pub in_t: bool,
    pub in_p: bool,
}

/// Parameters of a torus element: `t_{a,b}` for `SL`, `τ_a` for `SU`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusParams {
    Sl { a: u64, b: u64 },
    Su { a: u64 },
}

/// One of `SL_3(q)`, `SU_3(q)` with a fixed generating set.
///
/// Generators are a generating set of `U` (listed first), the Weyl element
/// `-Ω`, and for `SU` the torus element `τ_1`. `U` and its `-Ω` conjugate
/// generate the group; the torus generator is included for `SU` to cover
/// `q = 2`.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    family: Family,
    p: u64,
    f: u32,
    q: u64,
    field: FieldSpec,
    d: u64,
    /// Generator of `F_q^×` inside the matrix field.
    t: FFElem,
    gens: Vec<Mat3>,
    u_gen_count: usize,
}

pub fn make_group(family: Family, p: u64, f: u32) -> Result<GroupSpec> {
    make_group_capped(family, p, f, gf::DEFAULT_MAX_Q)
}

pub fn make_group_capped(family: Family, p: u64, f: u32, max_q: u64) -> Result<GroupSpec> {
    let ext = match family {
        Family::SL => 1,
        Family::SU => 2,
    };
    let field = gf::make_field_capped(p, f, ext, max_q)?;
    let q = field.q();
    let t = match family {
        Family::SL => field.generator(),
        Family::SU => field.pow(field.generator(), q + 1),
    };
    let q_minus_eps = match family {
        Family::SL => q - 1,
        Family::SU => q + 1,
    };
    let mut group = GroupSpec {
        family,
        p,
        f,
        q,
        field,
        d: num_integer::gcd(q_minus_eps, 3),
        t,
        gens: Vec::new(),
        u_gen_count: 0,
    };
    let mut gens = group.unipotent_generators()?;
    group.u_gen_count = gens.len();
    gens.push(group.weyl_element());
    if family == Family::SU {
        gens.push(group.torus_element(TorusParams::Su { a: 1 })?);
    }
    for g in &gens {
        if !group.is_member(g) {
            return Err(Error::Construction("generator outside the group".into()));
        }
    }
    group.gens = gens;
    Ok(group)
}

/// `GroupSpec` from a prime power `q`.
pub fn make_group_q(family: Family, q: u64) -> Result<GroupSpec> {
    let (p, f) = crate::arith::prime_power(q)
        .ok_or_else(|| Error::Parameter(format!("q = {q} is not a prime power")))?;
    make_group(family, p, f)
}

pub fn is_member(g: &GroupSpec, a: &Mat3) -> bool {
    g.is_member(a)
}

pub fn subgroup_membership(g: &GroupSpec, a: &Mat3) -> Result<SubgroupFlags> {
    if !g.is_member(a) {
        return Err(Error::Contract(
            "matrix is not an element of the group".into(),
        ));
    }
    let z = |i, j| a.at(i, j).is_zero();
    let one = |i: usize| a.at(i, i) == g.field.one();
    let in_p = z(2, 0) && z(2, 1);
    let in_b = in_p && z(1, 0);
    let in_t = in_b && z(0, 1) && z(0, 2) && z(1, 2);
    let in_u = in_b && one(0) && one(1) && one(2);
    Ok(SubgroupFlags {
        in_b,
        in_u,
        in_t,
        in_p,
    })
}

pub fn torus_element(g: &GroupSpec, params: TorusParams) -> Result<Mat3> {
    g.torus_element(params)
}

impl GroupSpec {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn epsilon(&self) -> i64 {
        self.family.epsilon()
    }

    /// `gcd(q - ε, 3)`, the order of the centre.
    pub fn d(&self) -> u64 {
        self.d
    }

    /// The field holding the matrix entries (`F_q` or `F_{q^2}`).
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Generator `t` of `F_q^×` (for `SU`, `τ^{q+1}`).
    pub fn t(&self) -> FFElem {
        self.t
    }

    pub fn generators(&self) -> &[Mat3] {
        &self.gens
    }

    /// The leading generators spanning `U`.
    pub fn unipotent_generators_slice(&self) -> &[Mat3] {
        &self.gens[..self.u_gen_count]
    }

    /// `q³(q²-1)(q³-ε)`.
    pub fn order(&self) -> u128 {
        let q = self.q as u128;
        let third = match self.family {
            Family::SL => q * q * q - 1,
            Family::SU => q * q * q + 1,
        };
        q * q * q * (q * q - 1) * third
    }

    /// Order of the Weyl group: 6 for `SL`, 2 for `SU`.
    pub fn weyl_order(&self) -> u64 {
        match self.family {
            Family::SL => 6,
            Family::SU => 2,
        }
    }

    pub fn identity(&self) -> Mat3 {
        let (o, z) = (self.field.one(), self.field.zero());
        Mat3([o, z, z, z, o, z, z, z, o])
    }

    pub fn mat(&self, rows: [[i64; 3]; 3]) -> Mat3 {
        let mut m = [FFElem::ZERO; 9];
        for i in 0..3 {
            for j in 0..3 {
                m[3 * i + j] = self.field.from_int(rows[i][j]);
            }
        }
        Mat3(m)
    }

    pub fn diag(&self, x: FFElem, y: FFElem, z: FFElem) -> Mat3 {
        let o = self.field.zero();
        Mat3([x, o, o, o, y, o, o, o, z])
    }

    pub fn mul(&self, a: &Mat3, b: &Mat3) -> Mat3 {
        let fld = &self.field;
        let mut out = [FFElem::ZERO; 9];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = fld.zero();
                for k in 0..3 {
                    acc = fld.add(acc, fld.mul(a.0[3 * i + k], b.0[3 * k + j]));
                }
                out[3 * i + j] = acc;
            }
        }
        Mat3(out)
    }

    pub fn det(&self, a: &Mat3) -> FFElem {
        let fld = &self.field;
        let m = |i, j| a.at(i, j);
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            fld.sub(fld.mul(m(r1, c1), m(r2, c2)), fld.mul(m(r1, c2), m(r2, c1)))
        };
        let t0 = fld.mul(m(0, 0), minor(1, 2, 1, 2));
        let t1 = fld.mul(m(0, 1), minor(1, 2, 0, 2));
        let t2 = fld.mul(m(0, 2), minor(1, 2, 0, 1));
        fld.add(fld.sub(t0, t1), t2)
    }

    /// Inverse via the adjugate.
    pub fn inv(&self, a: &Mat3) -> Result<Mat3> {
        let fld = &self.field;
        let det = self.det(a);
        let det_inv = fld.inv(det)?;
        let m = |i: usize, j: usize| a.at(i % 3, j % 3);
        let mut out = [FFElem::ZERO; 9];
        for i in 0..3 {
            for j in 0..3 {
                // cofactor C_{j,i}
                let c = fld.sub(
                    fld.mul(m(j + 1, i + 1), m(j + 2, i + 2)),
                    fld.mul(m(j + 1, i + 2), m(j + 2, i + 1)),
                );
                out[3 * i + j] = fld.mul(c, det_inv);
            }
        }
        Ok(Mat3(out))
    }

    pub fn transpose(&self, a: &Mat3) -> Mat3 {
        let mut out = a.0;
        for i in 0..3 {
            for j in 0..3 {
                out[3 * i + j] = a.0[3 * j + i];
            }
        }
        Mat3(out)
    }

    /// Entrywise `x ↦ x^q` (only meaningful for `SU`).
    pub fn frobenius(&self, a: &Mat3) -> Mat3 {
        Mat3(a.0.map(|x| self.field.pow(x, self.q)))
    }

    pub fn neg(&self, a: &Mat3) -> Mat3 {
        Mat3(a.0.map(|x| self.field.neg(x)))
    }

    /// Rank of `a - I`.
    pub fn rank_minus_identity(&self, a: &Mat3) -> usize {
        let fld = &self.field;
        let mut m = a.0;
        for i in 0..3 {
            m[4 * i] = fld.sub(m[4 * i], fld.one());
        }
        rank3(fld, m)
    }

    fn is_member(&self, a: &Mat3) -> bool {
        if self.det(a) != self.field.one() {
            return false;
        }
        match self.family {
            Family::SL => true,
            Family::SU => {
                let omega = self.mat([[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
                let lhs = self.mul(&self.mul(&self.transpose(&self.frobenius(a)), &omega), a);
                lhs == omega
            }
        }
    }

    /// `-Ω`, the longest Weyl element.
    pub fn weyl_element(&self) -> Mat3 {
        self.mat([[0, 0, -1], [0, -1, 0], [-1, 0, 0]])
    }

    fn torus_element(&self, params: TorusParams) -> Result<Mat3> {
        let fld = &self.field;
        match (self.family, params) {
            (Family::SL, TorusParams::Sl { a, b }) => {
                let n = self.q - 1;
                if a >= n.max(1) || b >= n.max(1) {
                    return Err(Error::Parameter(format!(
                        "torus parameters ({a}, {b}) outside 0..={}",
                        n.saturating_sub(1)
                    )));
                }
                let t = self.t;
                let mid = (2 * n - (a + b) % n.max(1)) % n.max(1);
                Ok(self.diag(fld.pow(t, a), fld.pow(t, mid), fld.pow(t, b)))
            }
            (Family::SU, TorusParams::Su { a }) => {
                let n = self.q * self.q - 1;
                if a >= n {
                    return Err(Error::Parameter(format!(
                        "torus parameter {a} outside 0..={}",
                        n - 1
                    )));
                }
                let tau = fld.generator();
                let e1 = a;
                let e2 = ((self.q - 1) * a) % n;
                let e3 = (n - (self.q * a) % n) % n;
                Ok(self.diag(fld.pow(tau, e1), fld.pow(tau, e2), fld.pow(tau, e3)))
            }
            _ => Err(Error::Parameter(
                "torus parameters do not match the family".into(),
            )),
        }
    }

    /// Torus coordinates of the diagonal of a Borel element: `(a, b)` with
    /// diagonal `(t^a, *, t^b)` for `SL`; `(a, 0)` with first entry `τ^a` for `SU`.
    pub fn torus_coordinates(&self, b: &Mat3) -> Result<(u64, u64)> {
        let fld = &self.field;
        match self.family {
            Family::SL => Ok((fld.log(b.at(0, 0))?, fld.log(b.at(2, 2))?)),
            Family::SU => Ok((fld.log(b.at(0, 0))?, 0)),
        }
    }

    /// Upper unitriangular matrix with entries `a, b, c` above the diagonal.
    pub fn unitriangular(&self, a: FFElem, b: FFElem, c: FFElem) -> Mat3 {
        let (o, z) = (self.field.one(), self.field.zero());
        Mat3([o, a, b, z, o, c, z, z, o])
    }

    fn unipotent_generators(&self) -> Result<Vec<Mat3>> {
        let fld = &self.field;
        let z = fld.zero();
        let p = self.p;
        match self.family {
            Family::SL => {
                let basis: Vec<FFElem> = (0..self.f)
                    .map(|i| fld.elem_from_code(p.pow(i)))
                    .collect::<Result<_>>()?;
                let mut gens: Vec<Mat3> =
                    basis.iter().map(|&l| self.unitriangular(l, z, z)).collect();
                gens.extend(basis.iter().map(|&l| self.unitriangular(z, z, l)));
                Ok(gens)
            }
            Family::SU => {
                let q = self.q;
                let tau = fld.generator();
                let frob = |x: FFElem| fld.pow(x, q);
                // b0 with b0 + b0^q = 1
                let b0 = fld
                    .elements()
                    .find(|&b| fld.add(b, frob(b)) == fld.one())
                    .ok_or_else(|| Error::Construction("trace is not surjective".into()))?;
                let mut gens = Vec::new();
                for i in 0..2 * self.f {
                    let a = fld.elem_from_code(p.pow(i))?;
                    let norm = fld.mul(a, frob(a));
                    let b = fld.mul(fld.neg(norm), b0);
                    gens.push(self.unitriangular(a, b, fld.neg(frob(a))));
                }
                let g = self.t;
                let omega = if p == 2 {
                    fld.one()
                } else {
                    fld.pow(tau, q.div_ceil(2))
                };
                for k in 0..self.f as u64 {
                    let zk = fld.mul(omega, fld.pow(g, k));
                    gens.push(self.unitriangular(z, zk, z));
                }
                Ok(gens)
            }
        }
    }
}

fn rank3(fld: &FieldSpec, mut m: [FFElem; 9]) -> usize {
    let mut rank = 0;
    for col in 0..3 {
        let Some(pivot) = (rank..3).find(|&r| !m[3 * r + col].is_zero()) else {
            continue;
        };
        for j in 0..3 {
            m.swap(3 * rank + j, 3 * pivot + j);
        }
        let inv = fld.inv(m[3 * rank + col]).expect("nonzero pivot");
        for r in 0..3 {
            if r != rank && !m[3 * r + col].is_zero() {
                let factor = fld.mul(m[3 * r + col], inv);
                for j in 0..3 {
                    let v = fld.mul(factor, m[3 * rank + j]);
                    m[3 * r + j] = fld.sub(m[3 * r + j], v);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_torus_membership() {
        let g = make_group(Family::SL, 5, 1).unwrap();
        assert!(is_member(&g, &g.identity()));
        let flags = subgroup_membership(&g, &g.identity()).unwrap();
        assert!(flags.in_b && flags.in_u && flags.in_t && flags.in_p);
        let t = g.t();
        let fld = g.field();
        let h = g.diag(t, fld.one(), fld.inv(t).unwrap());
        assert!(is_member(&g, &h));
    }

    #[test]
    fn unitriangular_flags() {
        let g = make_group(Family::SL, 2, 1).unwrap();
        let u = g.mat([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        let flags = subgroup_membership(&g, &u).unwrap();
        assert!(flags.in_u && flags.in_b && flags.in_p && !flags.in_t);
        let lower = g.mat([[1, 0, 0], [1, 1, 0], [0, 1, 1]]);
        assert_eq!(
            subgroup_membership(&g, &lower).unwrap(),
            SubgroupFlags::default()
        );
        let bad = g.mat([[1, 1, 0], [0, 1, 0], [0, 0, 0]]);
        assert!(matches!(
            subgroup_membership(&g, &bad),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn su_rejects_det_one_matrix_violating_hermitian_condition() {
        let g = make_group(Family::SU, 2, 1).unwrap();
        // upper unitriangular with a = 1, c = 0 has det 1 but c must be -a^q
        let m = g.mat([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(g.det(&m), g.field().one());
        assert!(!is_member(&g, &m));
        assert!(is_member(&g, &g.weyl_element()));
    }

    #[test]
    fn torus_elements() {
        let g = make_group(Family::SL, 5, 1).unwrap();
        assert_eq!(
            torus_element(&g, TorusParams::Sl { a: 0, b: 0 }).unwrap(),
            g.identity()
        );
        assert!(torus_element(&g, TorusParams::Sl { a: 4, b: 0 }).is_err());
        assert!(torus_element(&g, TorusParams::Su { a: 0 }).is_err());

        let g3 = make_group(Family::SL, 3, 1).unwrap();
        let h = torus_element(&g3, TorusParams::Sl { a: 1, b: 0 }).unwrap();
        let t = g3.t();
        assert_eq!(h, g3.diag(t, g3.field().inv(t).unwrap(), g3.field().one()));
        assert_ne!(h, g3.identity());
        assert_eq!(g3.mul(&h, &h), g3.identity());

        let su = make_group(Family::SU, 2, 1).unwrap();
        let tau = su.field().generator();
        let h = torus_element(&su, TorusParams::Su { a: 1 }).unwrap();
        // q - 1 = 1 and -q ≡ -2 (mod 3)
        let fld = su.field();
        assert_eq!(h, su.diag(tau, tau, fld.inv(fld.mul(tau, tau)).unwrap()));
        assert!(is_member(&su, &h));
    }

    #[test]
    fn torus_parametrization_is_injective() {
        for (fam, p, f) in [
            (Family::SL, 5, 1),
            (Family::SL, 2, 2),
            (Family::SU, 3, 1),
            (Family::SU, 2, 2),
        ] {
            let g = make_group(fam, p, f).unwrap();
            let q = g.q();
            let mut seen = std::collections::HashSet::new();
            match fam {
                Family::SL => {
                    for a in 0..q - 1 {
                        for b in 0..q - 1 {
                            let h = torus_element(&g, TorusParams::Sl { a, b }).unwrap();
                            assert!(subgroup_membership(&g, &h).unwrap().in_t);
                            assert_eq!(g.torus_coordinates(&h).unwrap(), (a, b));
                            seen.insert(h);
                        }
                    }
                    assert_eq!(seen.len() as u64, (q - 1) * (q - 1));
                }
                Family::SU => {
                    for a in 0..q * q - 1 {
                        let h = torus_element(&g, TorusParams::Su { a }).unwrap();
                        assert!(subgroup_membership(&g, &h).unwrap().in_t);
                        assert_eq!(g.torus_coordinates(&h).unwrap().0, a);
                        seen.insert(h);
                    }
                    assert_eq!(seen.len() as u64, q * q - 1);
                }
            }
        }
    }

    #[test]
    fn inverse_and_rank() {
        let g = make_group(Family::SU, 3, 1).unwrap();
        for x in g.generators() {
            assert_eq!(g.mul(x, &g.inv(x).unwrap()), g.identity());
        }
        let sl = make_group(Family::SL, 3, 1).unwrap();
        assert_eq!(sl.rank_minus_identity(&sl.identity()), 0);
        assert_eq!(
            sl.rank_minus_identity(&sl.mat([[1, 0, 1], [0, 1, 0], [0, 0, 1]])),
            1
        );
        assert_eq!(
            sl.rank_minus_identity(&sl.mat([[1, 1, 0], [0, 1, 1], [0, 0, 1]])),
            2
        );
    }

    #[test]
    fn capacity_and_parameters() {
        assert!(matches!(
            make_group(Family::SL, 6, 1),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            make_group_capped(Family::SU, 3, 3, 20),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            make_group_q(Family::SL, 6),
            Err(Error::Parameter(_))
        ));
        assert_eq!(make_group_q(Family::SU, 9).unwrap().d(), 1);
        assert_eq!(make_group_q(Family::SU, 8).unwrap().d(), 3);
        assert_eq!("su".parse::<Family>().unwrap(), Family::SU);
    }
}
